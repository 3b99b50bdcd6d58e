#include "polynet/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "polynet/errors.hpp"
#include "polynet/rng.hpp"

namespace polynet {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  for (std::string& f : fields) {
    while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) f.erase(f.begin());
    while (!f.empty() && (f.back() == ' ' || f.back() == '\t')) f.pop_back();
  }
  return fields;
}

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("CSV: malformed numeric field '" + s + "'");
  }
  if (pos != s.size()) throw std::invalid_argument("CSV: trailing junk in field '" + s + "'");
  if (!std::isfinite(v)) throw std::invalid_argument("CSV: non-finite value '" + s + "'");
  return v;
}

nlohmann::json matrix_rows(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

double round_sig(double v, int digits) {
  if (v == 0.0) return 0.0;
  const double mag = std::pow(10.0, digits - 1 - static_cast<int>(std::floor(std::log10(std::fabs(v)))));
  return std::round(v * mag) / mag;
}

}  // namespace

PointCloud read_cloud_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("CSV: empty input");
  std::vector<std::string> header = split_csv_line(line);
  bool has_weight = !header.empty() && header.back() == "weight";
  const std::size_t n = header.size() - (has_weight ? 1 : 0);
  if (n == 0) throw std::invalid_argument("CSV: no coordinate columns");
  for (std::size_t j = 0; j < n; ++j) {
    const std::string expect = "x" + std::to_string(j + 1);
    if (header[j] != expect)
      throw std::invalid_argument("CSV: expected header column '" + expect + "', got '" +
                                  header[j] + "'");
  }

  std::vector<double> values;
  std::vector<double> weights;
  std::size_t count = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    std::vector<std::string> f = split_csv_line(line);
    if (f.size() != header.size())
      throw std::invalid_argument("CSV: row has " + std::to_string(f.size()) + " fields, expected " +
                                  std::to_string(header.size()));
    for (std::size_t j = 0; j < n; ++j) values.push_back(parse_double(f[j]));
    if (has_weight) {
      const double w = parse_double(f[n]);
      if (w < 0.0) throw std::invalid_argument("CSV: negative weight");
      weights.push_back(w);
    }
    ++count;
  }
  if (count == 0) throw std::invalid_argument("CSV: no data rows");

  Matrix pts(count, n);
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = 0; j < n; ++j) pts(i, j) = values[i * n + j];
  if (has_weight) return PointCloud(std::move(pts), Vec(weights.begin(), weights.end()));
  return PointCloud(std::move(pts));
}

PointCloud read_cloud_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file: " + path);
  return read_cloud_csv(in);
}

void write_cloud_csv(std::ostream& out, const PointCloud& cloud, bool with_weights) {
  const std::size_t n = cloud.dim();
  for (std::size_t j = 0; j < n; ++j) out << (j ? "," : "") << "x" << (j + 1);
  if (with_weights) out << ",weight";
  out << "\n";
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) out << (j ? "," : "") << fmt_double(cloud.points()(i, j));
    if (with_weights) out << "," << fmt_double(cloud.weights()[i]);
    out << "\n";
  }
}

void write_cloud_csv_file(const std::string& path, const PointCloud& cloud, bool with_weights) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  write_cloud_csv(out, cloud, with_weights);
}

PointCloud gen_uniform_box(int n, std::size_t count, std::uint64_t seed) {
  if (n < 1 || count < 1) throw std::invalid_argument("gen: need n >= 1 and N >= 1");
  CounterRng rng(seed, 1);
  Matrix pts(count, n);
  for (std::size_t i = 0; i < count; ++i)
    for (int j = 0; j < n; ++j) pts(i, j) = rng.next_in(-1.0, 1.0);
  return PointCloud(std::move(pts));
}

PointCloud gen_gaussian(int n, std::size_t count, std::uint64_t seed) {
  if (n < 1 || count < 1) throw std::invalid_argument("gen: need n >= 1 and N >= 1");
  CounterRng rng(seed, 2);
  Matrix pts(count, n);
  for (std::size_t i = 0; i < count; ++i)
    for (int j = 0; j < n; ++j) pts(i, j) = rng.next_gaussian();
  return PointCloud(std::move(pts));
}

PointCloud gen_annulus(int n, std::size_t count, std::uint64_t seed) {
  if (n < 1 || count < 1) throw std::invalid_argument("gen: need n >= 1 and N >= 1");
  CounterRng rng(seed, 3);
  Matrix pts(count, n);
  for (std::size_t i = 0; i < count; ++i) {
    Vec dir(n);
    double nrm = 0.0;
    do {
      for (int j = 0; j < n; ++j) dir[j] = rng.next_gaussian();
      nrm = norm2(dir);
    } while (nrm < 1e-12);
    const double r = rng.next_in(0.6, 1.0);
    for (int j = 0; j < n; ++j) pts(i, j) = r * dir[j] / nrm;
  }
  return PointCloud(std::move(pts));
}

PointCloud gen_grid(int n, int k) {
  if (n < 1 || k < 1) throw std::invalid_argument("gen: need n >= 1 and k >= 1");
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) {
    if (total > 10'000'000 / static_cast<std::size_t>(k))
      throw CapabilityError("gen grid: too many points");
    total *= static_cast<std::size_t>(k);
  }
  Matrix pts(total, n);
  std::vector<int> idx(n, 0);
  for (std::size_t r = 0; r < total; ++r) {
    for (int j = 0; j < n; ++j) pts(r, j) = static_cast<double>(idx[j] + 1);
    for (int j = n - 1; j >= 0; --j) {
      if (++idx[j] < k) break;
      idx[j] = 0;
    }
  }
  return PointCloud(std::move(pts));
}

PointCloud gen_two_clusters(int n, std::size_t count, std::uint64_t seed) {
  if (n < 1 || count < 1) throw std::invalid_argument("gen: need n >= 1 and N >= 1");
  CounterRng rng(seed, 4);
  Matrix pts(count, n);
  for (std::size_t i = 0; i < count; ++i) {
    const double center = (i % 2 == 0) ? -2.0 : 2.0;
    pts(i, 0) = center + 0.3 * rng.next_gaussian();
    for (int j = 1; j < n; ++j) pts(i, j) = 0.3 * rng.next_gaussian();
  }
  return PointCloud(std::move(pts));
}

PointCloud gen_cloud(const std::string& kind, int n, std::size_t count, int k,
                     std::uint64_t seed) {
  if (kind == "uniform-box") return gen_uniform_box(n, count, seed);
  if (kind == "gaussian") return gen_gaussian(n, count, seed);
  if (kind == "annulus") return gen_annulus(n, count, seed);
  if (kind == "grid") return gen_grid(n, k);
  if (kind == "two-clusters") return gen_two_clusters(n, count, seed);
  throw std::invalid_argument("gen: unknown generator '" + kind + "'");
}

nlohmann::json to_json(const NetCertificate& cert) {
  nlohmann::json j;
  j["type"] = "net_certificate";
  j["n"] = cert.n;
  j["degree"] = cert.degree;
  j["kind"] = (cert.kind == NetKind::Weak) ? "weak" : "strong";
  j["net_points"] = matrix_rows(cert.net_points);
  j["weights"] = cert.weights;
  j["guarantee"] = cert.guarantee;
  j["lifted_centerpoint"] = cert.lifted_centerpoint;
  j["depth_achieved"] = cert.depth_achieved;
  j["depth_exact"] = cert.depth_exact;
  j["reconstruction_residual"] = cert.reconstruction_residual;
  return j;
}

NetCertificate net_certificate_from_json(const nlohmann::json& j) {
  NetCertificate cert;
  try {
    if (j.value("type", "") != "net_certificate")
      throw std::invalid_argument("certificate JSON: missing type tag");
    cert.n = j.at("n").get<int>();
    cert.degree = j.at("degree").get<int>();
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "weak") cert.kind = NetKind::Weak;
    else if (kind == "strong") cert.kind = NetKind::Strong;
    else throw std::invalid_argument("certificate JSON: bad kind");
    const auto& rows = j.at("net_points");
    cert.net_points = Matrix(rows.size(), cert.n);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != static_cast<std::size_t>(cert.n))
        throw std::invalid_argument("certificate JSON: point dimension mismatch");
      for (int k = 0; k < cert.n; ++k) cert.net_points(i, k) = rows[i][k].get<double>();
    }
    cert.weights = j.at("weights").get<Vec>();
    cert.guarantee = j.at("guarantee").get<double>();
    cert.lifted_centerpoint = j.at("lifted_centerpoint").get<Vec>();
    cert.depth_achieved = j.at("depth_achieved").get<double>();
    cert.depth_exact = j.at("depth_exact").get<bool>();
    cert.reconstruction_residual = j.at("reconstruction_residual").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("certificate JSON: ") + e.what());
  }
  return cert;
}

nlohmann::json to_json(const AdversaryReport& rep) {
  nlohmann::json j;
  j["type"] = "adversary_report";
  j["degree"] = rep.degree;
  j["method"] = (rep.method == AdversaryMethod::ExactSubset) ? "exact_subset" : "heuristic";
  j["exact"] = rep.exact;
  j["kept_mass"] = rep.kept_mass;
  j["kept_indices"] = rep.kept_indices;
  j["poly_n"] = rep.worst_poly.basis.n;
  j["poly_degree"] = rep.worst_poly.basis.degree;
  j["poly_coeffs"] = rep.worst_poly.coeffs;
  return j;
}

nlohmann::json to_json(const DepthCertificate& cert) {
  nlohmann::json j;
  j["type"] = "depth_certificate";
  j["point"] = cert.point;
  j["depth"] = cert.depth;
  j["exact"] = cert.exact;
  j["witness_normal"] = cert.witness.normal;
  j["witness_offset"] = cert.witness.offset;
  j["witness_mass"] = cert.witness.mass;
  return j;
}

nlohmann::json to_json(const BoundsRecord& rec) {
  nlohmann::json j;
  j["type"] = "caratheodory_bounds";
  j["n"] = rec.n;
  j["k"] = rec.k;
  j["degree"] = rec.degree;
  j["trivial_upper"] = rec.trivial_upper;
  j["lower_item2"] = rec.lower_item2;
  j["upper_item3"] = rec.upper_item3;
  j["exact_d2"] = rec.exact_d2;
  j["asymptotic_ratio"] = round_sig(rec.asymptotic_ratio, 6);
  j["monotone_chain_note"] = rec.monotone_chain_note;
  return j;
}

nlohmann::json to_json(const GridMeasurement& g) {
  nlohmann::json j;
  j["type"] = "grid_measurement";
  j["n"] = g.n;
  j["k"] = g.k;
  j["grid_size"] = g.grid_size;
  j["restriction_rank"] = g.restriction_rank;
  j["vanishing_dim"] = g.vanishing_dim;
  j["lower_bound_check"] = g.lower_bound_check;
  j["exact_rank"] = g.exact_rank;
  return j;
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  out << j.dump(2) << "\n";
}

}  // namespace polynet
