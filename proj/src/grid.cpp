#include "ibnls/grid.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace ibnls::spectral {

void Grid::validate() const {
  if (dim < 1 || dim > 3) throw std::invalid_argument("grid dim must be in {1,2,3}");
  const int m = points_per_axis;
  if (m < 2 || (m & (m - 1)) != 0)
    throw std::invalid_argument("points_per_axis must be a power of two >= 2");
  if (!(box_length > 0) || !std::isfinite(box_length))
    throw std::invalid_argument("box_length must be positive and finite");
}

bool ComplexField::finite() const {
  for (const Complex& v : values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

double ComplexField::max_abs() const {
  double m = 0;
  for (const Complex& v : values) m = std::max(m, std::abs(v));
  return m;
}

WeightField make_weight(const Grid& grid, double b, double delta) {
  grid.validate();
  if (!(b > 0)) throw std::domain_error("weight: b must be > 0");
  if (delta < 0) throw std::domain_error("weight: delta must be >= 0");
  WeightField w;
  w.grid = grid;
  w.b = b;
  w.delta = delta;
  w.values.resize(grid.size());
  for (std::size_t i = 0; i < w.values.size(); ++i) {
    const double r2 = grid.radius2(i) + delta * delta;
    if (r2 == 0.0)
      throw std::domain_error("weight: node at the origin with delta = 0");
    w.values[i] = std::pow(r2, -b / 2);
  }
  return w;
}

namespace {
constexpr char kMagic[4] = {'I', 'B', 'N', 'L'};
constexpr std::uint32_t kVersion = 1;
}  // namespace

void write_field(const ComplexField& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out.write(kMagic, 4);
  const std::uint32_t ver = kVersion, dim = f.grid.dim, m = f.grid.points_per_axis;
  out.write(reinterpret_cast<const char*>(&ver), 4);
  out.write(reinterpret_cast<const char*>(&dim), 4);
  out.write(reinterpret_cast<const char*>(&m), 4);
  out.write(reinterpret_cast<const char*>(&f.grid.box_length), 8);
  out.write(reinterpret_cast<const char*>(&f.time), 8);
  out.write(reinterpret_cast<const char*>(f.values.data()),
            static_cast<std::streamsize>(f.values.size() * sizeof(Complex)));
  if (!out) throw std::runtime_error("short write to '" + path + "'");
}

ComplexField read_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, kMagic, 4) != 0)
    throw std::runtime_error("'" + path + "': bad magic");
  std::uint32_t ver = 0, dim = 0, m = 0;
  in.read(reinterpret_cast<char*>(&ver), 4);
  in.read(reinterpret_cast<char*>(&dim), 4);
  in.read(reinterpret_cast<char*>(&m), 4);
  if (!in || ver != kVersion) throw std::runtime_error("'" + path + "': bad version");
  ComplexField f;
  f.grid.dim = static_cast<int>(dim);
  f.grid.points_per_axis = static_cast<int>(m);
  in.read(reinterpret_cast<char*>(&f.grid.box_length), 8);
  in.read(reinterpret_cast<char*>(&f.time), 8);
  f.grid.validate();
  f.values.resize(f.grid.size());
  in.read(reinterpret_cast<char*>(f.values.data()),
          static_cast<std::streamsize>(f.values.size() * sizeof(Complex)));
  if (!in) throw std::runtime_error("'" + path + "': truncated field data");
  return f;
}

}  // namespace ibnls::spectral
