/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, The snc-toolkit Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include <snc/dataset.hpp>
#include <snc/error.hpp>

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <string_view>

namespace snc {

namespace {

constexpr char kMagic[4]          = {'C', 'I', 'P', 'R'};
constexpr std::uint16_t kVersion  = 1;
constexpr std::size_t kHeaderSize = 24;

static_assert(std::endian::native == std::endian::little,
              "binary feature I/O assumes a little-endian host");

template <class T>
T read_le(const unsigned char* p)
{
  T v;
  std::memcpy(&v, p, sizeof(T));
  return v;
}

template <class T>
void write_le(std::ostream& os, T v)
{
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

std::vector<unsigned char> slurp(const std::filesystem::path& path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) { throw DataError("cannot open " + path.string()); }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string_view trim(std::string_view s)
{
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) { s.remove_prefix(1); }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::string_view> split_csv(std::string_view line)
{
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) { break; }
    start = comma + 1;
  }
  return out;
}

bool parse_float(std::string_view s, float& out)
{
  if (!s.empty() && s.front() == '+') { s.remove_prefix(1); }
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

template <class Int>
bool parse_int(std::string_view s, Int& out)
{
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size() && !s.empty();
}

std::string at_line(const std::filesystem::path& path, std::size_t line)
{
  return path.string() + ":" + std::to_string(line) + ": ";
}

FeatureMatrix load_binary(const std::filesystem::path& path)
{
  const auto bytes = slurp(path);
  if (bytes.size() < kHeaderSize) {
    throw DataError(path.string() + ": truncated header (" + std::to_string(bytes.size()) +
                    " bytes)");
  }
  if (std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw DataError(path.string() + ": bad magic at byte 0");
  }
  const auto version = read_le<std::uint16_t>(bytes.data() + 4);
  if (version != kVersion) {
    throw DataError(path.string() + ": unsupported version " + std::to_string(version) +
                    " at byte 4");
  }
  const auto n     = read_le<std::uint64_t>(bytes.data() + 6);
  const auto d     = read_le<std::uint32_t>(bytes.data() + 14);
  const auto flags = bytes[18];
  for (std::size_t b = 19; b < kHeaderSize; ++b) {
    if (bytes[b] != 0) {
      throw DataError(path.string() + ": nonzero reserved byte at offset " + std::to_string(b));
    }
  }
  if (n == 0 || d == 0) { throw DataError(path.string() + ": empty shape in header"); }
  const std::size_t count = static_cast<std::size_t>(n) * d;
  if (bytes.size() != kHeaderSize + count * sizeof(float)) {
    throw DataError(path.string() + ": payload is " +
                    std::to_string(bytes.size() - kHeaderSize) + " bytes, header implies " +
                    std::to_string(count * sizeof(float)));
  }
  std::vector<float> values(count);
  std::memcpy(values.data(), bytes.data() + kHeaderSize, count * sizeof(float));
  for (std::size_t i = 0; i < count; ++i) {
    if (!std::isfinite(values[i])) {
      throw DataError(path.string() + ": non-finite value at byte " +
                      std::to_string(kHeaderSize + i * sizeof(float)));
    }
  }
  // The flag records how the file was produced; it is not trusted on load.
  (void)flags;
  return FeatureMatrix(n, d, std::move(values), false);
}

FeatureMatrix load_csv(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) { throw DataError("cannot open " + path.string()); }
  std::vector<float> values;
  std::size_t cols = 0;
  std::size_t rows = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) { continue; }
    const auto fields = split_csv(line);
    std::vector<float> row(fields.size());
    bool numeric = true;
    for (std::size_t c = 0; c < fields.size(); ++c) {
      if (!parse_float(fields[c], row[c])) {
        numeric = false;
        break;
      }
    }
    if (!numeric) {
      if (rows == 0 && cols == 0) {
        cols = fields.size();  // header row
        continue;
      }
      throw DataError(at_line(path, line_no) + "non-numeric field");
    }
    if (cols == 0) { cols = fields.size(); }
    if (fields.size() != cols) {
      throw DataError(at_line(path, line_no) + "expected " + std::to_string(cols) +
                      " columns, found " + std::to_string(fields.size()));
    }
    for (float v : row) {
      if (!std::isfinite(v)) { throw DataError(at_line(path, line_no) + "non-finite value"); }
    }
    values.insert(values.end(), row.begin(), row.end());
    ++rows;
  }
  if (rows == 0) { throw DataError(path.string() + ": no data rows"); }
  return FeatureMatrix(rows, cols, std::move(values), false);
}

}  // namespace

FeatureMatrix::FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<float> values,
                             bool normalized)
  : rows_(rows), cols_(cols), normalized_(normalized)
{
  if (rows == 0 || cols == 0) { throw DataError("feature matrix needs n >= 1 and d >= 1"); }
  if (values.size() != rows * cols) {
    throw DataError("feature matrix has " + std::to_string(values.size()) + " values, expected " +
                    std::to_string(rows * cols));
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw DataError("non-finite feature at row " + std::to_string(i / cols) + ", column " +
                      std::to_string(i % cols));
    }
  }
  values_ = std::make_shared<const std::vector<float>>(std::move(values));
  if (normalized) { require_unit_rows(*this); }
}

FeatureFormat format_from_extension(const std::filesystem::path& path)
{
  return path.extension() == ".csv" ? FeatureFormat::csv : FeatureFormat::binary;
}

FeatureMatrix load_features(const std::filesystem::path& path, FeatureFormat format)
{
  return format == FeatureFormat::binary ? load_binary(path) : load_csv(path);
}

void write_features(const std::filesystem::path& path, const FeatureMatrix& m, FeatureFormat format)
{
  std::ofstream out(path, std::ios::binary);
  if (!out) { throw DataError("cannot write " + path.string()); }
  if (format == FeatureFormat::binary) {
    out.write(kMagic, 4);
    write_le<std::uint16_t>(out, kVersion);
    write_le<std::uint64_t>(out, m.rows());
    write_le<std::uint32_t>(out, static_cast<std::uint32_t>(m.cols()));
    write_le<std::uint8_t>(out, m.normalized() ? 1 : 0);
    const char reserved[5] = {0, 0, 0, 0, 0};
    out.write(reserved, 5);
    const auto values = m.values();
    out.write(reinterpret_cast<const char*>(values.data()),
              static_cast<std::streamsize>(values.size() * sizeof(float)));
  } else {
    char buf[32];
    for (std::size_t i = 0; i < m.rows(); ++i) {
      const auto row = m.row(i);
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) { out.put(','); }
        const auto res = std::to_chars(buf, buf + sizeof(buf), row[c]);
        out.write(buf, res.ptr - buf);
      }
      out.put('\n');
    }
  }
  if (!out) { throw DataError("write failed for " + path.string()); }
}

FeatureMatrix l2_normalize(const FeatureMatrix& m)
{
  std::vector<float> out(m.values().begin(), m.values().end());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto row = m.row(i);
    double norm    = 0.0;
    for (float v : row) {
      norm += static_cast<double>(v) * v;
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) { throw DataError("cannot normalize zero-norm row " + std::to_string(i)); }
    for (std::size_t c = 0; c < m.cols(); ++c) {
      out[i * m.cols() + c] = static_cast<float>(row[c] / norm);
    }
  }
  return FeatureMatrix(m.rows(), m.cols(), std::move(out), true);
}

void require_unit_rows(const FeatureMatrix& m, double tolerance)
{
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double norm = 0.0;
    for (float v : m.row(i)) {
      norm += static_cast<double>(v) * v;
    }
    if (std::abs(std::sqrt(norm) - 1.0) > tolerance) {
      throw DataError("row " + std::to_string(i) + " is not unit-norm (norm " +
                      std::to_string(std::sqrt(norm)) + ")");
    }
  }
}

LabelFile load_labels(const std::filesystem::path& path, std::size_t n)
{
  std::ifstream in(path);
  if (!in) { throw DataError("cannot open " + path.string()); }
  LabelFile result;
  result.labels.assign(n, std::nullopt);
  std::vector<bool> seen(n, false);
  std::map<std::int64_t, ClassId> remap;
  std::string line;
  std::size_t line_no = 0;
  bool header_done    = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) { continue; }
    const auto fields = split_csv(line);
    if (!header_done) {
      header_done = true;
      if (fields.size() == 2 && fields[0] == "index" && fields[1] == "label") { continue; }
    }
    if (fields.size() != 2) {
      throw DataError(at_line(path, line_no) + "expected `index,label`");
    }
    std::int64_t index = 0;
    if (!parse_int(fields[0], index)) { throw DataError(at_line(path, line_no) + "bad index"); }
    if (index < 0 || static_cast<std::uint64_t>(index) >= n) {
      throw DataError(at_line(path, line_no) + "index " + std::to_string(index) +
                      " out of range [0," + std::to_string(n) + ")");
    }
    if (seen[index]) {
      throw DataError(at_line(path, line_no) + "duplicate index " + std::to_string(index));
    }
    seen[index] = true;
    if (fields[1].empty()) { continue; }
    std::int64_t raw = 0;
    if (!parse_int(fields[1], raw)) { throw DataError(at_line(path, line_no) + "bad label"); }
    if (raw < 0) { throw DataError(at_line(path, line_no) + "negative label"); }
    auto [it, inserted] = remap.try_emplace(raw, static_cast<ClassId>(result.original.size()));
    if (inserted) { result.original.push_back(raw); }
    result.labels[index] = it->second;
  }
  return result;
}

void write_labels(const std::filesystem::path& path, std::span<const Label> labels)
{
  std::ofstream out(path);
  if (!out) { throw DataError("cannot write " + path.string()); }
  out << "index,label\n";
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i]) { out << i << ',' << *labels[i] << '\n'; }
  }
}

GcdDataset::GcdDataset(FeatureMatrix features, std::vector<Label> labels)
  : features_(std::move(features)), labels_(std::move(labels))
{
  if (labels_.size() != features_.rows()) {
    throw DataError("label count " + std::to_string(labels_.size()) + " != instance count " +
                    std::to_string(features_.rows()));
  }
  std::vector<std::size_t> per_class;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (!labels_[i]) {
      unlabelled_.push_back(i);
      continue;
    }
    const ClassId c = *labels_[i];
    if (c < 0) { throw DataError("negative class id at instance " + std::to_string(i)); }
    if (static_cast<std::size_t>(c) >= per_class.size()) { per_class.resize(c + 1, 0); }
    ++per_class[c];
    labelled_.push_back(i);
  }
  for (std::size_t c = 0; c < per_class.size(); ++c) {
    if (per_class[c] == 0) {
      throw DataError("labelled class ids are not contiguous: class " + std::to_string(c) +
                      " is unused");
    }
  }
  num_classes_ = per_class.size();
}

GcdDataset::GcdDataset(FeatureMatrix features)
  : GcdDataset(features, std::vector<Label>(features.rows()))
{
}

GcdDataset GcdDataset::restricted_to(std::span<const std::size_t> keep) const
{
  std::vector<Label> kept(labels_.size());
  std::vector<ClassId> remap(num_classes_, -1);
  for (std::size_t i : keep) {
    kept[i] = labels_[i];
    if (labels_[i]) { remap[static_cast<std::size_t>(*labels_[i])] = 0; }
  }
  ClassId next = 0;
  for (auto& r : remap) {
    if (r == 0) { r = next++; }
  }
  for (auto& l : kept) {
    if (l) { l = remap[static_cast<std::size_t>(*l)]; }
  }
  return GcdDataset(features_, std::move(kept));
}

LabelledSplit split_labelled(const GcdDataset& ds, double ratio, std::uint64_t seed)
{
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw ArgumentError("split ratio must lie in (0,1), got " + std::to_string(ratio));
  }
  if (ds.labelled_indices().empty()) { throw DataError("cannot split: no labelled instances"); }

  std::vector<std::vector<std::size_t>> by_class(ds.num_labelled_classes());
  for (std::size_t i : ds.labelled_indices()) {
    by_class[*ds.label(i)].push_back(i);
  }
  LabelledSplit split;
  split.ratio = ratio;
  split.seed  = seed;
  std::mt19937_64 rng(seed);
  for (auto& members : by_class) {
    std::shuffle(members.begin(), members.end(), rng);
    const double want  = std::ceil(ratio * static_cast<double>(members.size()) - 1e-9);
    const auto n_train = std::clamp<std::size_t>(static_cast<std::size_t>(want), 1, members.size());
    split.train.insert(split.train.end(), members.begin(), members.begin() + n_train);
    split.val.insert(split.val.end(), members.begin() + n_train, members.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.val.begin(), split.val.end());
  return split;
}

}  // namespace snc
