#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "guibench/kernels/adapter.hpp"
#include "guibench/kernels/layers.hpp"
#include "guibench/kernels/matrix.hpp"
#include "guibench/kernels/moe.hpp"

namespace guibench::kernels {

// Parameter files are a 20-byte header followed by a list of tensors; see
// docs/param_format.md. All integers and doubles are little-endian.
enum class ParamKind : std::uint32_t {
  kMatrix = 1,
  kDense = 2,
  kMlp = 3,
  kAdapter = 4,
  kMoe = 5,
};

inline constexpr std::uint32_t kParamFormatVersion = 1;

void write_params(std::ostream& out, const Matrix& m);
void write_params(std::ostream& out, const DenseLayer& d);
void write_params(std::ostream& out, const Mlp& mlp);
void write_params(std::ostream& out, const AdapterConfig& cfg);
void write_params(std::ostream& out, const MoeLayer& layer);

// Each reader throws IoError on truncation, bad magic/version, or a kind
// other than the one requested.
Matrix read_matrix(std::istream& in);
DenseLayer read_dense(std::istream& in);
Mlp read_mlp(std::istream& in);
AdapterConfig read_adapter(std::istream& in);
MoeLayer read_moe(std::istream& in);

template <typename T>
void save_params(const std::filesystem::path& path, const T& value);

Matrix load_matrix(const std::filesystem::path& path);
Mlp load_mlp(const std::filesystem::path& path);
AdapterConfig load_adapter(const std::filesystem::path& path);
MoeLayer load_moe(const std::filesystem::path& path);

}  // namespace guibench::kernels
