#include "guibench/kernels/param_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "guibench/errors.hpp"

namespace guibench::kernels {
namespace {

constexpr std::array<char, 4> kMagic = {'G', 'B', 'P', 'K'};

// Matrices larger than this are assumed to be corruption.
constexpr std::uint64_t kMaxElements = std::uint64_t{1} << 32;

template <typename T>
void put(std::ostream& out, T v) {
  std::array<char, sizeof(T)> bytes;
  std::memcpy(bytes.data(), &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  out.write(bytes.data(), bytes.size());
}

template <typename T>
T get(std::istream& in) {
  std::array<char, sizeof(T)> bytes;
  if (!in.read(bytes.data(), bytes.size())) throw IoError("parameter file truncated");
  if constexpr (std::endian::native == std::endian::big) std::reverse(bytes.begin(), bytes.end());
  T v;
  std::memcpy(&v, bytes.data(), sizeof(T));
  return v;
}

struct Header {
  ParamKind kind;
  std::uint32_t top_k;
  std::uint32_t tensor_count;
};

void write_header(std::ostream& out, ParamKind kind, std::uint32_t top_k, std::uint32_t count) {
  out.write(kMagic.data(), kMagic.size());
  put<std::uint32_t>(out, kParamFormatVersion);
  put<std::uint32_t>(out, static_cast<std::uint32_t>(kind));
  put<std::uint32_t>(out, top_k);
  put<std::uint32_t>(out, count);
}

Header read_header(std::istream& in, ParamKind expected) {
  std::array<char, 4> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw IoError("not a parameter file (bad magic)");
  }
  const auto version = get<std::uint32_t>(in);
  if (version != kParamFormatVersion) {
    throw IoError("unsupported parameter format version " + std::to_string(version));
  }
  Header h{static_cast<ParamKind>(get<std::uint32_t>(in)), get<std::uint32_t>(in),
           get<std::uint32_t>(in)};
  if (h.kind != expected) {
    throw IoError("parameter file holds kind " + std::to_string(static_cast<std::uint32_t>(h.kind)) +
                  ", expected " + std::to_string(static_cast<std::uint32_t>(expected)));
  }
  return h;
}

void write_tensor(std::ostream& out, const Matrix& m) {
  put<std::uint64_t>(out, m.rows());
  put<std::uint64_t>(out, m.cols());
  for (double v : m.data()) put<double>(out, v);
}

void write_tensor(std::ostream& out, const std::vector<double>& row) {
  put<std::uint64_t>(out, 1);
  put<std::uint64_t>(out, row.size());
  for (double v : row) put<double>(out, v);
}

Matrix read_tensor(std::istream& in) {
  const auto rows = get<std::uint64_t>(in);
  const auto cols = get<std::uint64_t>(in);
  if (cols != 0 && rows > kMaxElements / cols) throw IoError("tensor shape too large");
  std::vector<double> data(rows * cols);
  for (double& v : data) v = get<double>(in);
  return Matrix(rows, cols, std::move(data));
}

std::vector<double> read_row(std::istream& in) {
  Matrix m = read_tensor(in);
  if (m.rows() != 1) throw IoError("bias tensor must have exactly one row");
  return {m.data().begin(), m.data().end()};
}

void expect_count(const Header& h, std::uint32_t n) {
  if (h.tensor_count != n) {
    throw IoError("expected " + std::to_string(n) + " tensors, header says " +
                  std::to_string(h.tensor_count));
  }
}

void write_mlp_body(std::ostream& out, const Mlp& mlp) {
  write_tensor(out, mlp.up.weight);
  write_tensor(out, mlp.up.bias);
  write_tensor(out, mlp.down.weight);
  write_tensor(out, mlp.down.bias);
}

Mlp read_mlp_body(std::istream& in) {
  Mlp mlp;
  mlp.up.weight = read_tensor(in);
  mlp.up.bias = read_row(in);
  mlp.down.weight = read_tensor(in);
  mlp.down.bias = read_row(in);
  if (!mlp.is_consistent()) throw IoError("mlp tensor shapes are inconsistent");
  return mlp;
}

template <typename F>
auto with_input_file(const std::filesystem::path& path, F&& read) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read(in);
}

}  // namespace

void write_params(std::ostream& out, const Matrix& m) {
  write_header(out, ParamKind::kMatrix, 0, 1);
  write_tensor(out, m);
}

void write_params(std::ostream& out, const DenseLayer& d) {
  write_header(out, ParamKind::kDense, 0, 2);
  write_tensor(out, d.weight);
  write_tensor(out, d.bias);
}

void write_params(std::ostream& out, const Mlp& mlp) {
  write_header(out, ParamKind::kMlp, 0, 4);
  write_mlp_body(out, mlp);
}

void write_params(std::ostream& out, const AdapterConfig& cfg) {
  write_header(out, ParamKind::kAdapter, 0, 3);
  write_tensor(out, cfg.queries);
  write_tensor(out, cfg.fusion.weight);
  write_tensor(out, cfg.fusion.bias);
}

void write_params(std::ostream& out, const MoeLayer& layer) {
  write_header(out, ParamKind::kMoe, static_cast<std::uint32_t>(layer.top_k),
               static_cast<std::uint32_t>(1 + 4 * layer.experts.size()));
  write_tensor(out, layer.router);
  for (const auto& e : layer.experts) write_mlp_body(out, e);
}

Matrix read_matrix(std::istream& in) {
  expect_count(read_header(in, ParamKind::kMatrix), 1);
  return read_tensor(in);
}

DenseLayer read_dense(std::istream& in) {
  expect_count(read_header(in, ParamKind::kDense), 2);
  DenseLayer d;
  d.weight = read_tensor(in);
  d.bias = read_row(in);
  if (!d.is_consistent()) throw IoError("dense bias width does not match weight");
  return d;
}

Mlp read_mlp(std::istream& in) {
  expect_count(read_header(in, ParamKind::kMlp), 4);
  return read_mlp_body(in);
}

AdapterConfig read_adapter(std::istream& in) {
  expect_count(read_header(in, ParamKind::kAdapter), 3);
  AdapterConfig cfg;
  cfg.queries = read_tensor(in);
  cfg.num_queries = cfg.queries.rows();
  cfg.feature_dim = cfg.queries.cols();
  cfg.fusion.weight = read_tensor(in);
  cfg.fusion.bias = read_row(in);
  if (!cfg.is_consistent()) throw IoError("adapter tensor shapes are inconsistent");
  return cfg;
}

MoeLayer read_moe(std::istream& in) {
  const Header h = read_header(in, ParamKind::kMoe);
  if (h.tensor_count < 5 || (h.tensor_count - 1) % 4 != 0) {
    throw IoError("moe tensor count " + std::to_string(h.tensor_count) + " is not 1 + 4k");
  }
  MoeLayer layer;
  layer.router = read_tensor(in);
  layer.num_experts = (h.tensor_count - 1) / 4;
  layer.top_k = h.top_k;
  for (std::size_t e = 0; e < layer.num_experts; ++e) layer.experts.push_back(read_mlp_body(in));
  try {
    layer.validate();
  } catch (const InvalidConfig& err) {
    throw IoError(std::string("invalid moe parameters: ") + err.what());
  }
  return layer;
}

template <typename T>
void save_params(const std::filesystem::path& path, const T& value) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_params(out, value);
  if (!out.flush()) throw IoError("write failed: " + path.string());
}

template void save_params(const std::filesystem::path&, const Matrix&);
template void save_params(const std::filesystem::path&, const DenseLayer&);
template void save_params(const std::filesystem::path&, const Mlp&);
template void save_params(const std::filesystem::path&, const AdapterConfig&);
template void save_params(const std::filesystem::path&, const MoeLayer&);

Matrix load_matrix(const std::filesystem::path& path) {
  return with_input_file(path, [](std::istream& in) { return read_matrix(in); });
}
Mlp load_mlp(const std::filesystem::path& path) {
  return with_input_file(path, [](std::istream& in) { return read_mlp(in); });
}
AdapterConfig load_adapter(const std::filesystem::path& path) {
  return with_input_file(path, [](std::istream& in) { return read_adapter(in); });
}
MoeLayer load_moe(const std::filesystem::path& path) {
  return with_input_file(path, [](std::istream& in) { return read_moe(in); });
}

}  // namespace guibench::kernels
