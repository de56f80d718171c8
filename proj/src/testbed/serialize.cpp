#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "ckit/testbed/testbed.hpp"

namespace ckit {

namespace {

static_assert(std::endian::native == std::endian::little, "serializer assumes a little-endian host");

constexpr char kMagic[5] = {'C', 'K', 'I', 'T', '1'};
constexpr double kQuadraticTag = 1.0;
constexpr double kSaddleTag = 2.0;

class Writer {
 public:
  explicit Writer(const std::string& path) : out_(path, std::ios::binary) {
    if (!out_) throw ConfigError("cannot open " + path + " for writing");
    out_.write(kMagic, sizeof kMagic);
  }
  void scalar(double v) { out_.write(reinterpret_cast<const char*>(&v), sizeof v); }
  void vector(const Vector& v) {
    scalar(static_cast<double>(v.size()));
    for (Index i = 0; i < v.size(); ++i) scalar(v[i]);
  }
  void matrix(const Matrix& m) {
    scalar(static_cast<double>(m.rows()));
    scalar(static_cast<double>(m.cols()));
    for (Index i = 0; i < m.rows(); ++i)
      for (Index j = 0; j < m.cols(); ++j) scalar(m(i, j));
  }

 private:
  std::ofstream out_;
};

class Reader {
 public:
  explicit Reader(const std::string& path) : in_(path, std::ios::binary) {
    if (!in_) throw ConfigError("cannot open " + path);
    char magic[5];
    in_.read(magic, sizeof magic);
    if (!in_ || std::memcmp(magic, kMagic, sizeof magic) != 0) throw ConfigError(path + ": bad magic header");
  }
  double scalar() {
    double v;
    in_.read(reinterpret_cast<char*>(&v), sizeof v);
    if (!in_) throw ConfigError("truncated instance file");
    return v;
  }
  Index count() {
    const double v = scalar();
    if (!(v >= 0) || v != std::floor(v) || v > 1e8) throw ConfigError("corrupt size field in instance file");
    return static_cast<Index>(v);
  }
  Vector vector() {
    Vector v(count());
    for (Index i = 0; i < v.size(); ++i) v[i] = scalar();
    return v;
  }
  Matrix matrix() {
    const Index r = count();
    const Index c = count();
    Matrix m(r, c);
    for (Index i = 0; i < r; ++i)
      for (Index j = 0; j < c; ++j) m(i, j) = scalar();
    return m;
  }
  void expect_tag(double tag) {
    if (scalar() != tag) throw ConfigError("instance file holds a different problem kind");
  }

 private:
  std::ifstream in_;
};

}  // namespace

void save_instance(const std::string& path, const QuadraticInstance& inst) {
  Writer w(path);
  w.scalar(kQuadraticTag);
  w.scalar(inst.L);
  w.scalar(inst.mu);
  w.scalar(inst.radius);
  w.scalar(inst.f_star);
  w.matrix(inst.A);
  w.vector(inst.b);
  w.vector(inst.x_star);
  w.vector(inst.eigenvalues);
  w.matrix(inst.eigenvectors);
}

void save_instance(const std::string& path, const SaddleInstance& inst) {
  Writer w(path);
  w.scalar(kSaddleTag);
  w.scalar(inst.L);
  w.scalar(inst.mu_p);
  w.scalar(inst.mu_d);
  w.scalar(inst.rx);
  w.scalar(inst.ry);
  w.scalar(inst.f_star);
  w.matrix(inst.B);
  w.vector(inst.c);
  w.vector(inst.d);
  w.vector(inst.x_star);
  w.vector(inst.y_star);
  w.matrix(inst.H);
}

QuadraticInstance load_quadratic(const std::string& path) {
  Reader r(path);
  r.expect_tag(kQuadraticTag);
  QuadraticInstance inst;
  inst.L = r.scalar();
  inst.mu = r.scalar();
  inst.radius = r.scalar();
  inst.f_star = r.scalar();
  inst.A = r.matrix();
  inst.b = r.vector();
  inst.x_star = r.vector();
  inst.eigenvalues = r.vector();
  inst.eigenvectors = r.matrix();
  return inst;
}

SaddleInstance load_saddle(const std::string& path) {
  Reader r(path);
  r.expect_tag(kSaddleTag);
  SaddleInstance inst;
  inst.L = r.scalar();
  inst.mu_p = r.scalar();
  inst.mu_d = r.scalar();
  inst.rx = r.scalar();
  inst.ry = r.scalar();
  inst.f_star = r.scalar();
  inst.B = r.matrix();
  inst.c = r.vector();
  inst.d = r.vector();
  inst.x_star = r.vector();
  inst.y_star = r.vector();
  inst.H = r.matrix();
  return inst;
}

}  // namespace ckit
