#include "svcal/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace svcal {

namespace {

constexpr unsigned char kMagic[4] = {0x45, 0x56, 0x45, 0x43};  // "EVEC"
constexpr unsigned char kVersion = 0x01;

void put_u16(std::ostream& os, uint16_t v) {
  unsigned char b[2] = {static_cast<unsigned char>(v & 0xff),
                        static_cast<unsigned char>(v >> 8)};
  os.write(reinterpret_cast<const char*>(b), 2);
}

void put_u32(std::ostream& os, uint32_t v) {
  unsigned char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 4);
}

void put_u64(std::ostream& os, uint64_t v) {
  unsigned char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
  os.write(reinterpret_cast<const char*>(b), 8);
}

void put_f32(std::ostream& os, float v) {
  uint32_t bits;
  std::memcpy(&bits, &v, 4);
  put_u32(os, bits);
}

bool get_bytes(std::istream& is, void* out, size_t n) {
  is.read(static_cast<char*>(out), static_cast<std::streamsize>(n));
  return static_cast<size_t>(is.gcount()) == n;
}

uint16_t get_u16(std::istream& is, const std::string& what) {
  unsigned char b[2];
  if (!get_bytes(is, b, 2)) throw Error("EVEC: truncated file reading " + what);
  return static_cast<uint16_t>(b[0] | (b[1] << 8));
}

uint32_t get_u32(std::istream& is, const std::string& what) {
  unsigned char b[4];
  if (!get_bytes(is, b, 4)) throw Error("EVEC: truncated file reading " + what);
  uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<uint32_t>(b[i]) << (8 * i);
  return v;
}

uint64_t get_u64(std::istream& is, const std::string& what) {
  unsigned char b[8];
  if (!get_bytes(is, b, 8)) throw Error("EVEC: truncated file reading " + what);
  uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<uint64_t>(b[i]) << (8 * i);
  return v;
}

float get_f32(std::istream& is, const std::string& what) {
  uint32_t bits = get_u32(is, what);
  float v;
  std::memcpy(&v, &bits, 4);
  return v;
}

std::string get_str(std::istream& is, uint16_t len, const std::string& what) {
  std::string s(len, '\0');
  if (len > 0 && !get_bytes(is, s.data(), len))
    throw Error("EVEC: truncated file reading " + what);
  return s;
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode) {
  std::ofstream os(path, mode);
  if (!os) throw IoError("cannot open for writing: " + path);
  return os;
}

std::ifstream open_in(const std::string& path, std::ios::openmode mode) {
  std::ifstream is(path, mode);
  if (!is) throw IoError("cannot open for reading: " + path);
  return is;
}

void finish_write(std::ostream& os, const std::string& path) {
  os.flush();
  if (!os) throw IoError("write failed: " + path);
}

std::string fmt_g9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

double parse_double(const std::string& tok, const std::string& where) {
  char* end = nullptr;
  const double v = std::strtod(tok.c_str(), &end);
  if (end == tok.c_str() || *end != '\0')
    throw Error(where + ": cannot parse number \"" + tok + "\"");
  return v;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    const size_t pos = line.find('\t', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

// std::getline keeps a trailing '\r' from CRLF files
void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

void write_embeddings_binary(const EmbeddingSet& set, const std::string& path) {
  std::ofstream os = open_out(path, std::ios::binary);
  os.write(reinterpret_cast<const char*>(kMagic), 4);
  os.put(static_cast<char>(kVersion));
  put_u32(os, static_cast<uint32_t>(set.dim()));
  put_u64(os, static_cast<uint64_t>(set.size()));
  for (Index i = 0; i < set.size(); ++i) {
    const std::string& id = set.id(i);
    const std::string& domain = set.domain(i);
    if (id.size() > UINT16_MAX || domain.size() > UINT16_MAX)
      throw Error("EVEC: record " + std::to_string(i + 1) + ": string longer than 65535 bytes");
    put_u16(os, static_cast<uint16_t>(id.size()));
    os.write(id.data(), static_cast<std::streamsize>(id.size()));
    put_f32(os, static_cast<float>(set.duration(i)));
    put_u16(os, static_cast<uint16_t>(domain.size()));
    os.write(domain.data(), static_cast<std::streamsize>(domain.size()));
    for (Index k = 0; k < set.dim(); ++k)
      put_f32(os, static_cast<float>(set.vectors()(k, i)));
  }
  finish_write(os, path);
}

EmbeddingSet read_embeddings_binary(const std::string& path) {
  std::ifstream is = open_in(path, std::ios::binary);
  unsigned char magic[4];
  if (!get_bytes(is, magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
    throw Error("EVEC: bad magic in " + path);
  const int version = is.get();
  if (version != kVersion)
    throw Error("EVEC: unsupported version " + std::to_string(version));
  const uint32_t dim = get_u32(is, "dimension");
  const uint64_t count = get_u64(is, "record count");

  std::vector<EmbeddingRecord> records;
  records.reserve(count);
  for (uint64_t i = 0; i < count; ++i) {
    const std::string where = "record " + std::to_string(i + 1);
    EmbeddingRecord rec;
    const uint16_t id_len = get_u16(is, where + " id length");
    rec.id = get_str(is, id_len, where + " id");
    rec.duration_s = static_cast<double>(get_f32(is, where + " duration"));
    const uint16_t dom_len = get_u16(is, where + " domain length");
    rec.domain = get_str(is, dom_len, where + " domain");
    rec.vector.resize(dim);
    for (uint32_t k = 0; k < dim; ++k)
      rec.vector[static_cast<Index>(k)] =
          static_cast<double>(get_f32(is, where + " vector"));
    records.push_back(std::move(rec));
  }
  return EmbeddingSet::from_records(records, static_cast<Index>(dim));
}

void write_embeddings_tsv(const EmbeddingSet& set, const std::string& path) {
  std::ofstream os = open_out(path, std::ios::out);
  for (Index i = 0; i < set.size(); ++i) {
    os << set.id(i) << '\t' << fmt_g9(set.duration(i)) << '\t' << set.domain(i) << '\t';
    for (Index k = 0; k < set.dim(); ++k) {
      if (k > 0) os << ',';
      os << fmt_g9(set.vectors()(k, i));
    }
    os << '\n';
  }
  finish_write(os, path);
}

EmbeddingSet read_embeddings_tsv(const std::string& path) {
  std::ifstream is = open_in(path, std::ios::in);
  std::vector<EmbeddingRecord> records;
  std::string line;
  size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    strip_cr(line);
    if (line.empty()) continue;
    const std::string where = "embedding TSV record " + std::to_string(lineno);
    const auto cols = split_tabs(line);
    if (cols.size() != 4)
      throw Error(where + ": expected 4 tab-separated columns, got " +
                  std::to_string(cols.size()));
    EmbeddingRecord rec;
    rec.id = cols[0];
    rec.duration_s = parse_double(cols[1], where);
    rec.domain = cols[2];
    std::vector<double> comps;
    std::stringstream ss(cols[3]);
    std::string tok;
    while (std::getline(ss, tok, ',')) comps.push_back(parse_double(tok, where));
    rec.vector = Eigen::Map<const VectorXd>(comps.data(), static_cast<Index>(comps.size()));
    records.push_back(std::move(rec));
  }
  return EmbeddingSet::from_records(records);
}

}  // namespace

EmbeddingSet read_embeddings(const std::string& path, EmbeddingFormat format) {
  return format == EmbeddingFormat::binary ? read_embeddings_binary(path)
                                           : read_embeddings_tsv(path);
}

void write_embeddings(const EmbeddingSet& set, const std::string& path,
                      EmbeddingFormat format) {
  if (format == EmbeddingFormat::binary)
    write_embeddings_binary(set, path);
  else
    write_embeddings_tsv(set, path);
}

size_t evec_file_size(const EmbeddingSet& set) {
  size_t bytes = 4 + 1 + 4 + 8;  // magic, version, u32 dim, u64 count
  for (Index i = 0; i < set.size(); ++i)
    bytes += 2 + set.id(i).size() + 4 + 2 + set.domain(i).size() +
             4 * static_cast<size_t>(set.dim());
  return bytes;
}

TrialList read_trials(const std::string& path) {
  std::ifstream is = open_in(path, std::ios::in);
  std::vector<Trial> trials;
  std::string line;
  size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    strip_cr(line);
    if (line.empty()) continue;
    const std::string where = "trial TSV line " + std::to_string(lineno);
    const auto cols = split_tabs(line);
    if (cols.size() < 2 || cols.size() > 4)
      throw Error(where + ": expected 2-4 tab-separated columns, got " +
                  std::to_string(cols.size()));
    Trial t;
    t.enroll_id = cols[0];
    t.test_id = cols[1];
    if (cols.size() >= 3) {
      if (cols[2] == "tgt")
        t.label = Label::target;
      else if (cols[2] == "imp")
        t.label = Label::nontarget;
      else
        throw Error(where + ": unknown label token \"" + cols[2] + "\" (want tgt|imp)");
    }
    if (cols.size() == 4) t.domain = cols[3];
    trials.push_back(std::move(t));
  }
  return TrialList::from_trials(std::move(trials));
}

void write_trials(const TrialList& trials, const std::string& path) {
  std::ofstream os = open_out(path, std::ios::out);
  for (const Trial& t : trials) {
    os << t.enroll_id << '\t' << t.test_id;
    if (t.label != Label::unlabeled) {
      os << '\t' << (t.label == Label::target ? "tgt" : "imp");
      if (!t.domain.empty()) os << '\t' << t.domain;
    }
    os << '\n';
  }
  finish_write(os, path);
}

void write_scores(const TrialList& trials, const ScoreSet& scores,
                  const std::string& path) {
  check_aligned(trials, scores);
  std::ofstream os = open_out(path, std::ios::out);
  for (Index i = 0; i < trials.size(); ++i)
    os << trials[i].enroll_id << '\t' << trials[i].test_id << '\t'
       << fmt_g9(scores.scores[i]) << '\n';
  finish_write(os, path);
}

ScoreSet read_scores(const std::string& path, const TrialList& trials) {
  std::ifstream is = open_in(path, std::ios::in);
  VectorXd scores(trials.size());
  std::string line;
  Index row = 0;
  size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    strip_cr(line);
    if (line.empty()) continue;
    const std::string where = "score TSV line " + std::to_string(lineno);
    if (row >= trials.size()) throw Error(where + ": more scores than trials");
    const auto cols = split_tabs(line);
    if (cols.size() != 3)
      throw Error(where + ": expected 3 tab-separated columns, got " +
                  std::to_string(cols.size()));
    if (cols[0] != trials[row].enroll_id || cols[1] != trials[row].test_id)
      throw Error(where + ": id mismatch: (" + cols[0] + ", " + cols[1] +
                  ") vs trial (" + trials[row].enroll_id + ", " +
                  trials[row].test_id + ")");
    scores[row] = parse_double(cols[2], where);
    ++row;
  }
  if (row != trials.size())
    throw Error("score TSV " + path + ": " + std::to_string(row) +
                " scores for " + std::to_string(trials.size()) + " trials");
  return make_score_set(std::move(scores), "file", trials);
}

}  // namespace svcal
