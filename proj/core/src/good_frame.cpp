#include "zakharov/good_frame.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include "zakharov/error.hpp"
#include "zakharov/random.hpp"
#include "zakharov/special.hpp"

namespace zakharov {

double DegreeCertificate::ratio() const {
  double r = 0.0;
  for (std::size_t i = 0; i < kCertificateExponents.size(); ++i)
    r = std::max(r, max_lq[i] / std::sqrt(kCertificateExponents[i]));
  return r;
}

void GoodFrame::mix(const double* reference, double* out) const {
  for (int k = 0; k <= max_degree; ++k) {
    const int n = 2 * k + 1, base = k * k;
    const Eigen::MatrixXd& o = mixing[k];
    for (int l = 0; l < n; ++l) {
      double s = 0.0;
      for (int m = 0; m < n; ++m) s += o(l, m) * reference[base + m];
      out[base + l] = s;
    }
  }
}

void GoodFrame::evaluate(const Vec3& unit, double* out) const {
  std::vector<double> y(mode_count());
  real_spherical_harmonics(max_degree, unit, y.data());
  mix(y.data(), out);
}

namespace {

Eigen::MatrixXd haar_orthogonal(int n, std::uint64_t seed, int attempt, int degree) {
  Eigen::MatrixXd g(n, n);
  const std::uint64_t s = stream_id(seed, "frame", static_cast<std::uint64_t>(attempt), {degree, 0, 0});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = stream_normal(s, static_cast<std::uint64_t>(i) * n + j);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

void fill_storage(GoodFrame& f, int quad_degree) {
  f.quad = make_sphere_rule(quad_degree);
  f.values.resize(f.mode_count(), static_cast<Eigen::Index>(f.quad.size()));
  std::vector<double> b(f.mode_count());
  for (std::size_t j = 0; j < f.quad.size(); ++j) {
    f.evaluate(f.quad.nodes[j], b.data());
    for (int i = 0; i < f.mode_count(); ++i) f.values(i, static_cast<Eigen::Index>(j)) = b[i];
  }
}

double frame_constant(const std::vector<DegreeCertificate>& c) {
  double r = 0.0;
  for (const auto& d : c) r = std::max(r, d.ratio());
  return r;
}

}  // namespace

std::vector<DegreeCertificate> certify_frame(const std::vector<Eigen::MatrixXd>& mixing) {
  const int K = static_cast<int>(mixing.size()) - 1;
  std::vector<DegreeCertificate> out(K + 1);
  for (int k = 0; k <= K; ++k) out[k].degree = k;
  // |b|^16 has degree 16 K; one product rule serves every degree.
  const SphereRule rule = make_sphere_rule(std::max(16 * K, 2));
  GoodFrame tmp;
  tmp.max_degree = K;
  tmp.mixing = mixing;
  const int modes = tmp.mode_count();
  std::vector<std::array<double, 4>> sums(modes, {0.0, 0.0, 0.0, 0.0});
  std::vector<double> sup(modes, 0.0), b(modes);
  for (std::size_t j = 0; j < rule.size(); ++j) {
    tmp.evaluate(rule.nodes[j], b.data());
    const double w = rule.weights[j];
    for (int i = 0; i < modes; ++i) {
      const double a2 = b[i] * b[i], a4 = a2 * a2, a8 = a4 * a4;
      sums[i][0] += w * a2;
      sums[i][1] += w * a4;
      sums[i][2] += w * a8;
      sums[i][3] += w * a8 * a8;
      sup[i] = std::max(sup[i], std::abs(b[i]));
    }
  }
  for (int k = 0; k <= K; ++k)
    for (int l = 0; l <= 2 * k; ++l) {
      const int i = k * k + l;
      for (int q = 0; q < 4; ++q)
        out[k].max_lq[q] = std::max(out[k].max_lq[q], std::pow(sums[i][q], 1.0 / kCertificateExponents[q]));
      out[k].max_linf = std::max(out[k].max_linf, sup[i]);
    }
  return out;
}

GoodFrame build_good_frame(int k_deg_max, std::uint64_t seed, const FrameOptions& options) {
  require(k_deg_max >= 0, "good frame: k_deg_max must be nonnegative");
  const int quad_degree = options.quad_degree < 0 ? 2 * k_deg_max + 3 : options.quad_degree;
  require(quad_degree >= 2 * k_deg_max, "good frame: storage quadrature degree below 2 k_deg_max");
  GoodFrame best;
  for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
    GoodFrame f;
    f.max_degree = k_deg_max;
    f.seed = seed;
    f.cap = options.cap;
    f.attempts = attempt + 1;
    for (int k = 0; k <= k_deg_max; ++k) f.mixing.push_back(haar_orthogonal(2 * k + 1, seed, attempt, k));
    f.certificates = certify_frame(f.mixing);
    f.c_frame = frame_constant(f.certificates);
    if (f.c_frame <= options.cap) {
      fill_storage(f, quad_degree);
      return f;
    }
  }
  throw PreconditionError("good frame: certificate cap " + std::to_string(options.cap) + " not reached in " +
                          std::to_string(options.max_attempts) + " attempts");
}

GoodFrame reference_frame(int k_deg_max, const FrameOptions& options) {
  GoodFrame f;
  f.max_degree = k_deg_max;
  f.cap = options.cap;
  for (int k = 0; k <= k_deg_max; ++k) f.mixing.push_back(Eigen::MatrixXd::Identity(2 * k + 1, 2 * k + 1));
  f.certificates = certify_frame(f.mixing);
  f.c_frame = frame_constant(f.certificates);
  fill_storage(f, options.quad_degree < 0 ? 2 * k_deg_max + 3 : options.quad_degree);
  return f;
}

nlohmann::json GoodFrame::sidecar() const {
  nlohmann::json certs = nlohmann::json::array();
  for (const auto& c : certificates)
    certs.push_back({{"degree", c.degree},
                     {"max_l2", c.max_lq[0]},
                     {"max_l4", c.max_lq[1]},
                     {"max_l8", c.max_lq[2]},
                     {"max_l16", c.max_lq[3]},
                     {"max_linf_sampled", c.max_linf},
                     {"ratio", c.ratio()}});
  return {{"k_deg_max", max_degree},
          {"seed", seed},
          {"attempts", attempts},
          {"cap", cap},
          {"C_frame", c_frame},
          {"storage_quadrature_degree", quad.exact_degree},
          {"certificate_quadrature_degree", std::max(16 * max_degree, 2)},
          {"certificates", certs}};
}

namespace {

template <typename T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw PreconditionError("frame file truncated");
  return v;
}

}  // namespace

void save_frame(const std::filesystem::path& path, const GoodFrame& f) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw PreconditionError("cannot open " + path.string() + " for writing");
  os.write("ZKGF", 4);
  put<std::uint32_t>(os, 1);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(f.max_degree));
  put<std::uint64_t>(os, f.seed);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(f.attempts));
  put<double>(os, f.cap);
  put<double>(os, f.c_frame);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(f.quad.exact_degree));
  for (int k = 0; k <= f.max_degree; ++k) {
    const int n = 2 * k + 1;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) put<double>(os, f.mixing[k](i, j));
    for (double v : f.certificates[k].max_lq) put<double>(os, v);
    put<double>(os, f.certificates[k].max_linf);
  }
}

GoodFrame load_frame(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw PreconditionError("cannot open frame file " + path.string());
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "ZKGF", 4) != 0) throw PreconditionError("not a ZKGF frame file");
  if (get<std::uint32_t>(is) != 1) throw PreconditionError("unsupported ZKGF version");
  GoodFrame f;
  f.max_degree = static_cast<int>(get<std::uint32_t>(is));
  f.seed = get<std::uint64_t>(is);
  f.attempts = static_cast<int>(get<std::uint32_t>(is));
  f.cap = get<double>(is);
  f.c_frame = get<double>(is);
  const int quad_degree = static_cast<int>(get<std::uint32_t>(is));
  for (int k = 0; k <= f.max_degree; ++k) {
    const int n = 2 * k + 1;
    Eigen::MatrixXd o(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) o(i, j) = get<double>(is);
    f.mixing.push_back(o);
    DegreeCertificate c;
    c.degree = k;
    for (double& v : c.max_lq) v = get<double>(is);
    c.max_linf = get<double>(is);
    f.certificates.push_back(c);
  }
  fill_storage(f, quad_degree);
  return f;
}

}  // namespace zakharov
