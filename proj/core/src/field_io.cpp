#include "conewave/field_io.hpp"

#include <array>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "conewave/errors.hpp"

namespace conewave {

namespace {

constexpr char kMagic[5] = {'C', 'W', 'A', 'V', '1'};

void put_u32le(std::ostream& os, std::uint32_t v) {
  const std::array<unsigned char, 4> b = {
      static_cast<unsigned char>(v & 0xff), static_cast<unsigned char>((v >> 8) & 0xff),
      static_cast<unsigned char>((v >> 16) & 0xff),
      static_cast<unsigned char>((v >> 24) & 0xff)};
  os.write(reinterpret_cast<const char*>(b.data()), 4);
}

std::uint32_t get_u32le(std::istream& is) {
  std::array<unsigned char, 4> b{};
  is.read(reinterpret_cast<char*>(b.data()), 4);
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

// float64 values cross the file boundary as their little-endian bit pattern
void put_f64le(std::ostream& os, double v) {
  std::uint64_t bits;
  std::memcpy(&bits, &v, 8);
  std::array<unsigned char, 8> b{};
  for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((bits >> (8 * i)) & 0xff);
  os.write(reinterpret_cast<const char*>(b.data()), 8);
}

double get_f64le(std::istream& is) {
  std::array<unsigned char, 8> b{};
  is.read(reinterpret_cast<char*>(b.data()), 8);
  std::uint64_t bits = 0;
  for (int i = 0; i < 8; ++i) bits |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, const std::string& path) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw IoError("malformed number '" + s + "' in " + path);
  }
}

std::size_t parse_index(const std::string& s, const std::string& path) {
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw IoError("malformed index '" + s + "' in " + path);
  }
}

void check_unit_rows(const DiscreteField& f, const std::string& path) {
  for (std::size_t m = 0; m < f.rows(); ++m)
    for (std::size_t n = 0; n < f.cols(); ++n) {
      const double* p = f.at(m, n);
      double s = 0.0;
      for (std::size_t i = 0; i < f.dim(); ++i) {
        if (!std::isfinite(p[i])) throw ValidationError("non-finite entry in " + path);
        s += p[i] * p[i];
      }
      if (std::abs(std::sqrt(s) - 1.0) > 1e-6)
        throw ValidationError("non-unit entry at (" + std::to_string(m) + "," +
                              std::to_string(n) + ") in " + path);
    }
}

DiscreteField read_field_binary(std::ifstream& is, const std::string& path) {
  is.seekg(5);
  const std::uint32_t d = get_u32le(is);
  const std::uint32_t steps_m = get_u32le(is);
  const std::uint32_t steps_n = get_u32le(is);
  if (!is) throw IoError("truncated header in " + path);
  if (d == 0 || d + 1 > Vec::kMaxLen) throw IoError("unsupported dimension in " + path);
  DiscreteField f(steps_m + 1, steps_n + 1, d + 1);
  const std::size_t total = f.rows() * f.cols() * f.dim();
  for (std::size_t i = 0; i < total; ++i) f.raw()[i] = get_f64le(is);
  if (!is) throw IoError("truncated payload in " + path);
  char extra;
  if (is.read(&extra, 1)) throw IoError("trailing bytes in " + path);
  return f;
}

DiscreteField read_field_csv(std::ifstream& is, const std::string& path) {
  is.seekg(0);
  std::string line;
  if (!std::getline(is, line)) throw IoError("empty file " + path);
  const auto header = split_csv(line);
  if (header.size() < 4 || header[0] != "m" || header[1] != "n")
    throw IoError("bad field header in " + path);
  const std::size_t dim = header.size() - 2;
  if (dim > Vec::kMaxLen) throw IoError("unsupported dimension in " + path);

  // first pass over rows to learn the extents, second to place values
  struct Row {
    std::size_t m, n;
    std::array<double, Vec::kMaxLen> x;
  };
  std::vector<Row> rows;
  std::size_t max_m = 0, max_n = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != header.size()) throw IoError("ragged row in " + path);
    Row r{};
    r.m = parse_index(cells[0], path);
    r.n = parse_index(cells[1], path);
    for (std::size_t i = 0; i < dim; ++i) r.x[i] = parse_double(cells[2 + i], path);
    max_m = std::max(max_m, r.m);
    max_n = std::max(max_n, r.n);
    rows.push_back(r);
  }
  DiscreteField f(max_m + 1, max_n + 1, dim);
  std::vector<char> seen(f.rows() * f.cols(), 0);
  for (const Row& r : rows) {
    f.set(r.m, r.n, Vec::from(r.x.data(), dim));
    seen[r.m * f.cols() + r.n] = 1;
  }
  for (char s : seen)
    if (!s) throw IoError("missing grid entries in " + path);
  return f;
}

}  // namespace

void write_field_csv(const DiscreteField& field, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path + " for writing");
  os << "m,n";
  for (std::size_t i = 0; i < field.dim(); ++i) os << ",x" << i;
  os << "\n";
  for (std::size_t m = 0; m < field.rows(); ++m)
    for (std::size_t n = 0; n < field.cols(); ++n) {
      os << m << "," << n;
      const double* p = field.at(m, n);
      for (std::size_t i = 0; i < field.dim(); ++i) os << "," << fmt_double(p[i]);
      os << "\n";
    }
  if (!os) throw IoError("write failed for " + path);
}

void write_field_binary(const DiscreteField& field, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path + " for writing");
  os.write(kMagic, 5);
  put_u32le(os, static_cast<std::uint32_t>(field.dim() - 1));
  put_u32le(os, static_cast<std::uint32_t>(field.rows() - 1));
  put_u32le(os, static_cast<std::uint32_t>(field.cols() - 1));
  const std::size_t total = field.rows() * field.cols() * field.dim();
  for (std::size_t i = 0; i < total; ++i) put_f64le(os, field.raw()[i]);
  if (!os) throw IoError("write failed for " + path);
}

DiscreteField read_field(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path);
  char magic[5] = {};
  is.read(magic, 5);
  DiscreteField f = (is && std::memcmp(magic, kMagic, 5) == 0) ? read_field_binary(is, path)
                                                               : read_field_csv(is, path);
  check_unit_rows(f, path);
  return f;
}

ForcingGrid read_forcing_csv(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path);
  return read_field_csv(is, path);
}

void write_boundary_csv(const BoundaryPair& boundary, const std::string& path) {
  boundary.validate();
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path + " for writing");
  os << "side,index";
  for (std::size_t i = 0; i < boundary.ambient_dim(); ++i) os << ",x" << i;
  os << "\n";
  auto row = [&](const char* side, std::size_t idx, const Vec& v) {
    os << side << "," << idx;
    for (std::size_t i = 0; i < v.size(); ++i) os << "," << fmt_double(v[i]);
    os << "\n";
  };
  for (std::size_t j = boundary.y_minus.size(); j-- > 0;) row("minus", j, boundary.y_minus[j]);
  for (std::size_t m = 0; m < boundary.y_plus.size(); ++m) row("plus", m, boundary.y_plus[m]);
  if (!os) throw IoError("write failed for " + path);
}

BoundaryPair read_boundary_csv(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path);
  std::string line;
  if (!std::getline(is, line)) throw IoError("empty file " + path);
  const auto header = split_csv(line);
  if (header.size() < 4 || header[0] != "side" || header[1] != "index")
    throw IoError("bad boundary header in " + path);
  const std::size_t dim = header.size() - 2;
  if (dim > Vec::kMaxLen) throw IoError("unsupported dimension in " + path);

  std::vector<std::pair<std::size_t, Vec>> minus, plus;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto cells = split_csv(line);
    if (cells.size() != header.size()) throw IoError("ragged row in " + path);
    const std::size_t idx = parse_index(cells[1], path);
    std::array<double, Vec::kMaxLen> x{};
    for (std::size_t i = 0; i < dim; ++i) x[i] = parse_double(cells[2 + i], path);
    auto& side = cells[0] == "minus" ? minus
               : cells[0] == "plus"  ? plus
                                     : throw IoError("unknown side '" + cells[0] + "' in " + path);
    side.emplace_back(idx, Vec::from(x.data(), dim));
  }

  auto assemble = [&](std::vector<std::pair<std::size_t, Vec>>& rows, const char* side) {
    std::vector<Vec> out(rows.size(), Vec(dim, 0.0));
    std::vector<char> seen(rows.size(), 0);
    for (auto& [idx, v] : rows) {
      if (idx >= rows.size() || seen[idx])
        throw IoError(std::string("bad ") + side + " indices in " + path);
      out[idx] = v;
      seen[idx] = 1;
    }
    return out;
  };
  BoundaryPair b;
  b.y_minus = assemble(minus, "minus");
  b.y_plus = assemble(plus, "plus");
  if (b.y_minus.empty() || b.y_plus.empty()) throw IoError("missing side in " + path);
  for (std::size_t i = 0; i < dim; ++i)
    if (b.y_minus[0][i] != b.y_plus[0][i])
      throw ValidationError("junction mismatch between sides in " + path);
  b.validate(1e-6);
  return b;
}

std::string file_digest_hex(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path);
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  char buf[65536];
  while (is.read(buf, sizeof buf) || is.gcount() > 0) {
    const std::streamsize got = is.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 0x100000001b3ULL;
    }
    if (got < static_cast<std::streamsize>(sizeof buf)) break;
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016" PRIx64, hash);
  return out;
}

}  // namespace conewave
