#include "qha/tensor_io.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

namespace qha {

namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <class T>
void put(std::string& out, T v) {
  static_assert(std::is_trivially_copyable_v<T>);
  unsigned char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
  out.append(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <class T>
T get(const std::string& in, std::size_t& pos) {
  if (pos + sizeof(T) > in.size()) throw IoError("QHA1: truncated input");
  unsigned char buf[sizeof(T)];
  std::memcpy(buf, in.data() + pos, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
  pos += sizeof(T);
  T v;
  std::memcpy(&v, buf, sizeof(T));
  return v;
}

std::size_t element_count(const std::vector<std::uint64_t>& dims) {
  std::size_t n = 1;
  for (auto d : dims) n *= static_cast<std::size_t>(d);
  return n;
}

}  // namespace

std::string encode_tensor(const Tensor& t) {
  if (element_count(t.dims) != t.data.size()) throw ShapeError("encode_tensor: dims do not match payload");
  std::string out = "QHA1";
  put<std::uint32_t>(out, kDtypeComplex128);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(t.dims.size()));
  for (auto d : t.dims) put<std::uint64_t>(out, d);
  for (const Complex& z : t.data) {
    put<double>(out, z.real());
    put<double>(out, z.imag());
  }
  return out;
}

Tensor decode_tensor(const std::string& bytes) {
  if (bytes.size() < 4 || bytes.compare(0, 4, "QHA1") != 0) throw IoError("QHA1: bad magic");
  std::size_t pos = 4;
  const auto dtype = get<std::uint32_t>(bytes, pos);
  if (dtype != kDtypeComplex128) throw IoError("QHA1: unsupported dtype " + std::to_string(dtype));
  const auto rank = get<std::uint32_t>(bytes, pos);
  Tensor t;
  for (std::uint32_t r = 0; r < rank; ++r) t.dims.push_back(get<std::uint64_t>(bytes, pos));
  const std::size_t n = element_count(t.dims);
  if (bytes.size() - pos != n * 16) throw IoError("QHA1: payload size does not match dims");
  t.data.resize(n);
  for (auto& z : t.data) {
    const double re = get<double>(bytes, pos);
    const double im = get<double>(bytes, pos);
    z = {re, im};
  }
  return t;
}

Tensor to_tensor(const GridFn& f) {
  Tensor t;
  t.dims.assign(f.grid().dims(), static_cast<std::uint64_t>(f.grid().n()));
  t.data.assign(f.values().begin(), f.values().end());
  return t;
}

Tensor to_tensor(const TraceOp& a) {
  const int n = a.dim();
  Tensor t{{static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(n)}, {}};
  t.data.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t.data.push_back(a.matrix()(i, j));
  return t;
}

GridFn tensor_to_gridfn(const Tensor& t) {
  if (t.dims.empty()) throw ShapeError("tensor_to_gridfn: rank 0");
  for (auto d : t.dims)
    if (d != t.dims[0]) throw ShapeError("tensor_to_gridfn: dims must be equal");
  return GridFn(PhaseGrid(static_cast<int>(t.dims[0]), static_cast<int>(t.dims.size())), t.data);
}

TraceOp tensor_to_traceop(const Tensor& t) {
  if (t.dims.size() != 2 || t.dims[0] != t.dims[1]) throw ShapeError("tensor_to_traceop: need a square rank-2 tensor");
  const int n = static_cast<int>(t.dims[0]);
  Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = t.data[static_cast<std::size_t>(i) * n + j];
  return TraceOp(std::move(m));
}

void write_tensor(const std::string& path, const Tensor& t) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path + " for writing");
  const std::string bytes = encode_tensor(t);
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!os) throw IoError("write failed: " + path);
}

Tensor read_tensor(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return decode_tensor(ss.str());
}

}  // namespace qha
