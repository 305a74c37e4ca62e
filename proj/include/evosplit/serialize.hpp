#ifndef EVOSPLIT_SERIALIZE_HPP
#define EVOSPLIT_SERIALIZE_HPP

#include <iosfwd>
#include <string>

#include "json.hpp"

#include "evosplit/nsga2.hpp"
#include "evosplit/split_metrics.hpp"
#include "evosplit/stats.hpp"

namespace evosplit {

/// Stats object with the fixed key set (card, dens, div, pdiv, tcs_raw,
/// tcs_log, avg_ir, scumble, max_labels, max_frequency, card2, dens2, div2,
/// pdiv2, max_frequency2), plus m, q, and any zero-presence label warnings.
nlohmann::json stats_to_json(const MultiLabelDataset& d, const DatasetStats& s,
                             const PairStats& p);

/// SplitReport with exactly the documented field names.
nlohmann::json report_to_json(const SplitReport& r);

/// Front dump: array of {ld_prime, lpd} objects.
nlohmann::json front_to_json(const ParetoFront& front);

/// CSV "example_index,fold" with a header row, 0-based, LF endings.
void write_assignment_csv(std::ostream& out, const Assignment& a);
void write_assignment_csv_file(const std::string& path, const Assignment& a);

/// Reads the CSV back; rows may appear in any order but every index in
/// [0, row-count) must appear exactly once.
Assignment read_assignment_csv(std::istream& in);
Assignment read_assignment_csv_file(const std::string& path);

}  // namespace evosplit

#endif
