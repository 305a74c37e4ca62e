#include "evosplit/serialize.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace evosplit {

nlohmann::json stats_to_json(const MultiLabelDataset& d, const DatasetStats& s,
                             const PairStats& p) {
  nlohmann::json j;
  j["m"] = d.num_examples();
  j["q"] = d.num_labels();
  j["card"] = s.card;
  j["dens"] = s.dens;
  j["div"] = s.div;
  j["pdiv"] = s.pdiv;
  j["tcs_raw"] = s.tcs_raw;
  j["tcs_log"] = s.tcs_log;
  j["avg_ir"] = s.avg_ir;
  j["scumble"] = s.scumble;
  j["max_labels"] = s.max_labels;
  j["max_frequency"] = s.max_frequency;
  j["card2"] = p.card2;
  j["dens2"] = p.dens2;
  j["div2"] = p.div2;
  j["pdiv2"] = p.pdiv2;
  j["max_frequency2"] = p.max_frequency2;
  if (!s.zero_presence_labels.empty()) {
    nlohmann::json warn = nlohmann::json::array();
    for (const std::int32_t l : s.zero_presence_labels) {
      warn.push_back(d.label_names()[static_cast<std::size_t>(l)]);
    }
    j["zero_presence_labels"] = std::move(warn);
  }
  return j;
}

nlohmann::json report_to_json(const SplitReport& r) {
  nlohmann::json j;
  j["ld"] = r.ld;
  j["ld_prime"] = r.ld_prime;
  j["lpd"] = r.lpd;
  j["ed"] = r.ed;
  j["fz"] = r.fz;
  j["flz"] = r.flz;
  j["fold_sizes"] = r.fold_sizes;
  j["constrained_feasible"] = r.constrained_feasible;
  return j;
}

nlohmann::json front_to_json(const ParetoFront& front) {
  nlohmann::json arr = nlohmann::json::array();
  for (const ObjectivePair& obj : front.objectives) {
    arr.push_back({{"ld_prime", obj.ld_prime}, {"lpd", obj.lpd}});
  }
  return arr;
}

void write_assignment_csv(std::ostream& out, const Assignment& a) {
  out << "example_index,fold\n";
  for (std::int64_t i = 0; i < a.size(); ++i) {
    out << i << ',' << a.fold_of[static_cast<std::size_t>(i)] << '\n';
  }
}

void write_assignment_csv_file(const std::string& path, const Assignment& a) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  write_assignment_csv(out, a);
}

Assignment read_assignment_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty assignment file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "example_index,fold") {
    throw std::runtime_error("assignment file must start with header 'example_index,fold'");
  }

  std::vector<std::pair<std::int64_t, std::int32_t>> rows;
  std::int64_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": expected 'index,fold'");
    }
    std::int64_t index = 0;
    std::int64_t fold = 0;
    const char* s1 = line.data();
    const char* e1 = line.data() + comma;
    const char* s2 = line.data() + comma + 1;
    const char* e2 = line.data() + line.size();
    if (std::from_chars(s1, e1, index).ptr != e1 || std::from_chars(s2, e2, fold).ptr != e2) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": malformed row");
    }
    rows.emplace_back(index, static_cast<std::int32_t>(fold));
  }

  Assignment a;
  a.fold_of.assign(rows.size(), -1);
  for (const auto& [index, fold] : rows) {
    if (index < 0 || index >= static_cast<std::int64_t>(rows.size()) ||
        a.fold_of[static_cast<std::size_t>(index)] != -1) {
      throw std::runtime_error("assignment rows must cover each example index exactly once");
    }
    a.fold_of[static_cast<std::size_t>(index)] = fold;
  }
  return a;
}

Assignment read_assignment_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open assignment file: " + path);
  return read_assignment_csv(in);
}

}  // namespace evosplit
