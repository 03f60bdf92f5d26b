#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qha/operator_space.hpp"
#include "qha/phase_space.hpp"

namespace qha {

/// QHA1 interchange: "QHA1", u32 dtype (1 = complex128), u32 rank, rank × u64
/// dims, then row-major interleaved re/im doubles. All integers and floats are
/// little-endian.
struct Tensor {
  std::vector<std::uint64_t> dims;
  std::vector<Complex> data;
};

inline constexpr std::uint32_t kDtypeComplex128 = 1;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string encode_tensor(const Tensor& t);
/// Throws IoError on bad magic, unknown dtype or truncated payload.
Tensor decode_tensor(const std::string& bytes);

Tensor to_tensor(const GridFn& f);
Tensor to_tensor(const TraceOp& a);
/// Rank must match: rank-d cube for a grid function, rank 2 square for an operator.
GridFn tensor_to_gridfn(const Tensor& t);
TraceOp tensor_to_traceop(const Tensor& t);

void write_tensor(const std::string& path, const Tensor& t);
Tensor read_tensor(const std::string& path);

}  // namespace qha
