#ifndef EVOSPLIT_DATASET_HPP
#define EVOSPLIT_DATASET_HPP

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace evosplit {

/// One label occurrence entry: label index plus how many times the label
/// appears in the example (1 for presence-only datasets).
struct LabelCount {
  std::int32_t label = 0;
  std::int64_t count = 0;

  friend bool operator==(const LabelCount&, const LabelCount&) = default;
};

/// Sparse multi-label dataset. Rows are examples, each holding a sparse,
/// label-sorted list of (label, count) pairs; absent labels are omitted and
/// stored counts are always >= 1. Immutable after load and safe to share
/// across threads.
class MultiLabelDataset {
 public:
  MultiLabelDataset() = default;
  MultiLabelDataset(std::vector<std::string> label_names,
                    std::vector<std::vector<LabelCount>> entries,
                    std::vector<std::string> example_ids = {});

  std::int64_t num_examples() const { return static_cast<std::int64_t>(entries_.size()); }
  std::int32_t num_labels() const { return static_cast<std::int32_t>(label_names_.size()); }

  const std::vector<std::string>& label_names() const { return label_names_; }
  const std::vector<std::vector<LabelCount>>& entries() const { return entries_; }
  const std::vector<LabelCount>& entry(std::int64_t i) const { return entries_[static_cast<std::size_t>(i)]; }
  const std::vector<std::string>& example_ids() const { return example_ids_; }

 private:
  std::vector<std::string> label_names_;
  std::vector<std::vector<LabelCount>> entries_;
  std::vector<std::string> example_ids_;  // empty or one id per example
};

enum class DatasetFormat { kSparseText, kJsonl };

/// Thrown on malformed input; carries the 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::int64_t line, const std::string& message);
  std::int64_t line() const { return line_; }

 private:
  std::int64_t line_;
};

/// Reads a dataset from a byte stream.
///
/// sparse-text: optional first line "#q <int>", then one line per example of
/// whitespace-separated tokens `<label>` or `<label>:<count>`; a blank line is
/// an example with no labels. Without the header q is inferred as
/// max index + 1.
///
/// jsonl: one object per line with field "labels" mapping label name to a
/// positive count, optional "id". Label order is first-seen order unless the
/// first line is a header object {"label_names": [...]} declaring it.
MultiLabelDataset load_dataset(std::istream& in, DatasetFormat format);

MultiLabelDataset load_dataset_file(const std::string& path, DatasetFormat format);

}  // namespace evosplit

#endif
