#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

// Little-endian binary primitives shared by the checkpoint and pool formats.
// Layouts are documented in docs/formats.md and stable across versions.

namespace sdpg::detail {

inline void write_bytes(std::ostream& out, const void* p, std::size_t n) {
  out.write(static_cast<const char*>(p), static_cast<std::streamsize>(n));
}

inline void read_bytes(std::istream& in, void* p, std::size_t n) {
  in.read(static_cast<char*>(p), static_cast<std::streamsize>(n));
  if (static_cast<std::size_t>(in.gcount()) != n) {
    throw std::runtime_error("unexpected end of file");
  }
}

inline void write_u32(std::ostream& out, std::uint32_t v) { write_bytes(out, &v, 4); }
inline void write_u64(std::ostream& out, std::uint64_t v) { write_bytes(out, &v, 8); }
inline void write_f64(std::ostream& out, double v) { write_bytes(out, &v, 8); }

inline std::uint32_t read_u32(std::istream& in) {
  std::uint32_t v;
  read_bytes(in, &v, 4);
  return v;
}
inline std::uint64_t read_u64(std::istream& in) {
  std::uint64_t v;
  read_bytes(in, &v, 8);
  return v;
}
inline double read_f64(std::istream& in) {
  double v;
  read_bytes(in, &v, 8);
  return v;
}

inline void write_magic(std::ostream& out, const char (&magic)[9]) {
  write_bytes(out, magic, 8);
}

inline void expect_magic(std::istream& in, const char (&magic)[9]) {
  char buf[8];
  read_bytes(in, buf, 8);
  if (std::memcmp(buf, magic, 8) != 0) {
    throw std::runtime_error(std::string("bad file magic, expected ") + magic);
  }
}

inline void write_string(std::ostream& out, const std::string& s) {
  write_u64(out, s.size());
  write_bytes(out, s.data(), s.size());
}

inline std::string read_string(std::istream& in) {
  const auto n = read_u64(in);
  std::string s(n, '\0');
  read_bytes(in, s.data(), n);
  return s;
}

template <typename Row>
void write_row(std::ostream& out, const Row& row) {
  for (Eigen::Index i = 0; i < row.size(); ++i) write_f64(out, row(i));
}

template <typename Row>
void read_row(std::istream& in, Row&& row) {
  for (Eigen::Index i = 0; i < row.size(); ++i) row(i) = read_f64(in);
}

inline void write_vector(std::ostream& out, const Eigen::VectorXd& v) {
  write_u32(out, static_cast<std::uint32_t>(v.size()));
  write_row(out, v);
}

inline Eigen::VectorXd read_vector(std::istream& in) {
  Eigen::VectorXd v(read_u32(in));
  read_row(in, v);
  return v;
}

}  // namespace sdpg::detail
