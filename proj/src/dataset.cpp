#include "evosplit/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace evosplit {

namespace {

std::vector<LabelCount> to_sorted_entry(std::map<std::int32_t, std::int64_t>& acc) {
  std::vector<LabelCount> row;
  row.reserve(acc.size());
  for (const auto& [label, count] : acc) row.push_back({label, count});
  acc.clear();
  return row;
}

bool parse_int(std::string_view text, std::int64_t& out) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

}  // namespace

ParseError::ParseError(std::int64_t line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

MultiLabelDataset::MultiLabelDataset(std::vector<std::string> label_names,
                                     std::vector<std::vector<LabelCount>> entries,
                                     std::vector<std::string> example_ids)
    : label_names_(std::move(label_names)),
      entries_(std::move(entries)),
      example_ids_(std::move(example_ids)) {
  const auto q = static_cast<std::int32_t>(label_names_.size());
  for (auto& row : entries_) {
    std::sort(row.begin(), row.end(),
              [](const LabelCount& a, const LabelCount& b) { return a.label < b.label; });
    for (const LabelCount& lc : row) {
      if (lc.label < 0 || lc.label >= q) throw std::invalid_argument("label index out of range");
      if (lc.count < 1) throw std::invalid_argument("label count must be positive");
    }
    for (std::size_t i = 1; i < row.size(); ++i) {
      if (row[i].label == row[i - 1].label) throw std::invalid_argument("duplicate label in entry");
    }
  }
  if (!example_ids_.empty() && example_ids_.size() != entries_.size()) {
    throw std::invalid_argument("example_ids length must match example count");
  }
}

namespace {

MultiLabelDataset load_sparse_text(std::istream& in) {
  std::string line;
  std::int64_t line_no = 0;
  std::int64_t declared_q = -1;
  std::int32_t max_label = -1;
  std::vector<std::vector<LabelCount>> entries;

  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();

    if (first) {
      first = false;
      if (line.rfind("#q", 0) == 0) {
        std::int64_t q = 0;
        std::string_view rest = std::string_view(line).substr(2);
        while (!rest.empty() && (rest.front() == ' ' || rest.front() == '\t')) rest.remove_prefix(1);
        if (!parse_int(rest, q) || q < 1) throw ParseError(line_no, "bad header, expected '#q <int>'");
        declared_q = q;
        continue;
      }
    }
    if (!line.empty() && line[0] == '#') throw ParseError(line_no, "unexpected comment line");

    std::map<std::int32_t, std::int64_t> acc;
    std::istringstream tokens(line);
    std::string token;
    while (tokens >> token) {
      std::int64_t label = 0;
      std::int64_t count = 1;
      const auto colon = token.find(':');
      if (colon == std::string::npos) {
        if (!parse_int(token, label)) throw ParseError(line_no, "malformed token '" + token + "'");
      } else {
        if (!parse_int(std::string_view(token).substr(0, colon), label) ||
            !parse_int(std::string_view(token).substr(colon + 1), count)) {
          throw ParseError(line_no, "malformed token '" + token + "'");
        }
      }
      if (label < 0) throw ParseError(line_no, "negative label index");
      if (declared_q >= 0 && label >= declared_q) {
        throw ParseError(line_no, "label index " + std::to_string(label) + " >= declared q " +
                                      std::to_string(declared_q));
      }
      if (count < 1) throw ParseError(line_no, "non-positive count");
      max_label = std::max(max_label, static_cast<std::int32_t>(label));
      acc[static_cast<std::int32_t>(label)] += count;
    }
    entries.push_back(to_sorted_entry(acc));
  }

  const std::int64_t q = declared_q >= 0 ? declared_q : static_cast<std::int64_t>(max_label) + 1;
  std::vector<std::string> names(static_cast<std::size_t>(std::max<std::int64_t>(q, 0)));
  for (std::size_t i = 0; i < names.size(); ++i) names[i] = std::to_string(i);
  return MultiLabelDataset(std::move(names), std::move(entries));
}

MultiLabelDataset load_jsonl(std::istream& in) {
  using nlohmann::json;
  std::string line;
  std::int64_t line_no = 0;
  std::vector<std::string> names;
  std::unordered_map<std::string, std::int32_t> name_to_index;
  bool names_declared = false;
  std::vector<std::vector<LabelCount>> entries;
  std::vector<std::string> ids;
  bool any_id = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(line_no, std::string("invalid JSON: ") + e.what());
    }
    if (!obj.is_object()) throw ParseError(line_no, "expected a JSON object");

    if (line_no == 1 && obj.contains("label_names") && !obj.contains("labels")) {
      if (!obj["label_names"].is_array()) throw ParseError(line_no, "label_names must be an array");
      for (const auto& name : obj["label_names"]) {
        if (!name.is_string()) throw ParseError(line_no, "label_names entries must be strings");
        if (!name_to_index.emplace(name.get<std::string>(), static_cast<std::int32_t>(names.size())).second) {
          throw ParseError(line_no, "duplicate label name in header");
        }
        names.push_back(name.get<std::string>());
      }
      names_declared = true;
      continue;
    }

    if (!obj.contains("labels") || !obj["labels"].is_object()) {
      throw ParseError(line_no, "missing \"labels\" object");
    }
    std::map<std::int32_t, std::int64_t> acc;
    for (const auto& [name, value] : obj["labels"].items()) {
      if (!value.is_number_integer() || value.get<std::int64_t>() < 1) {
        throw ParseError(line_no, "label \"" + name + "\" must have a positive integer count");
      }
      auto it = name_to_index.find(name);
      if (it == name_to_index.end()) {
        if (names_declared) throw ParseError(line_no, "unknown label \"" + name + "\"");
        it = name_to_index.emplace(name, static_cast<std::int32_t>(names.size())).first;
        names.push_back(name);
      }
      acc[it->second] += value.get<std::int64_t>();
    }
    entries.push_back(to_sorted_entry(acc));
    if (obj.contains("id")) {
      if (!obj["id"].is_string()) throw ParseError(line_no, "id must be a string");
      ids.resize(entries.size() - 1);
      ids.push_back(obj["id"].get<std::string>());
      any_id = true;
    } else if (any_id) {
      ids.push_back("");
    }
  }
  if (any_id) ids.resize(entries.size());
  return MultiLabelDataset(std::move(names), std::move(entries), std::move(ids));
}

}  // namespace

MultiLabelDataset load_dataset(std::istream& in, DatasetFormat format) {
  switch (format) {
    case DatasetFormat::kSparseText:
      return load_sparse_text(in);
    case DatasetFormat::kJsonl:
      return load_jsonl(in);
  }
  throw std::logic_error("unknown dataset format");
}

MultiLabelDataset load_dataset_file(const std::string& path, DatasetFormat format) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  return load_dataset(in, format);
}

}  // namespace evosplit
