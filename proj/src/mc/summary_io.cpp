#include "lexopt/info/tradeoff_io.hpp"
#include "lexopt/mc/listener_mc.hpp"

namespace lexopt::mc {

std::string summary_csv_header() {
  return "language,flip_rate,n,mean_distance,std_distance,mean_info_loss,std_info_loss,"
         "mean_accuracy,std_accuracy,complexity,entropy";
}

std::string summary_csv_row(const std::string& language, const PopulationSummary& s) {
  using info::format_real;
  std::string row = language;
  for (const std::string& field :
       {format_real(s.flip_rate), std::to_string(s.n), format_real(s.distance.mean),
        format_real(s.distance.std), format_real(s.info_loss.mean), format_real(s.info_loss.std),
        format_real(s.accuracy.mean), format_real(s.accuracy.std), format_real(s.complexity),
        format_real(s.entropy)}) {
    row += ',';
    row += field;
  }
  return row;
}

nlohmann::json to_json(const std::string& language, const PopulationSummary& s) {
  return {{"language", language},
          {"flip_rate", s.flip_rate},
          {"n", s.n},
          {"mean_distance", s.distance.mean},
          {"std_distance", s.distance.std},
          {"mean_info_loss", s.info_loss.mean},
          {"std_info_loss", s.info_loss.std},
          {"mean_accuracy", s.accuracy.mean},
          {"std_accuracy", s.accuracy.std},
          {"complexity", s.complexity},
          {"entropy", s.entropy}};
}

}  // namespace lexopt::mc
