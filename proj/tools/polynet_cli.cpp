// polynet command-line front end: synthetic cloud generation, net
// construction, adversarial verification, depth queries, and Caratheodory
// bound reports.
//
// Exit codes: 0 success/verified, 1 verified-false, 2 capability refusal,
// 3 input error, 4 numerical failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "polynet/adversary.hpp"
#include "polynet/bounds.hpp"
#include "polynet/depth.hpp"
#include "polynet/errors.hpp"
#include "polynet/io.hpp"
#include "polynet/nets.hpp"

namespace {

using namespace polynet;

void emit_json(const nlohmann::json& j, const std::string& out_path) {
  if (out_path.empty())
    std::cout << j.dump(2) << "\n";
  else
    write_json_file(out_path, j);
}

Vec parse_point(const std::string& s) {
  Vec v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t pos = 0;
    v.push_back(std::stod(tok, &pos));
    if (pos != tok.size()) throw std::invalid_argument("--at: malformed coordinate '" + tok + "'");
  }
  if (v.empty()) throw std::invalid_argument("--at: empty point");
  return v;
}

int run(int argc, char** argv) {
  CLI::App app{"polynomial centerpoint nets for discrete measures"};
  app.require_subcommand(1);

  int n = 2, D = 2, k = 2;
  std::size_t N = 50;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::size_t exact_cap = 20;
  int iterations = 10000;
  std::string format = "json";
  std::string out_path;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "RNG seed (counter-based generator; byte-reproducible)");
    cmd->add_option("--tol", tol, "numerical tolerance");
    cmd->add_option("--format", format, "output format (json|csv where applicable)");
    cmd->add_option("--out", out_path, "output file (default: stdout)");
  };

  // gen <kind> --n --N [--k] --seed --out
  auto* gen = app.add_subcommand("gen", "generate a synthetic point cloud (CSV)");
  std::string gen_kind;
  gen->add_option("kind", gen_kind, "uniform-box | gaussian | annulus | grid | two-clusters")
      ->required();
  gen->add_option("--n", n, "ambient dimension");
  gen->add_option("--N", N, "point count");
  gen->add_option("--k", k, "grid side (grid generator)");
  add_common(gen);

  // net <weak2|strong> <cloud.csv> [--D]
  auto* net = app.add_subcommand("net", "construct a net certificate (JSON)");
  std::string net_kind, net_input;
  net->add_option("kind", net_kind, "weak2 | strong")->required();
  net->add_option("input", net_input, "point-cloud CSV")->required();
  net->add_option("--D", D, "polynomial degree (strong nets; weak2 forces 2)");
  add_common(net);

  // verify <exact|heuristic> <cloud.csv> <cert.json>
  auto* verify = app.add_subcommand("verify", "adversarially verify a net certificate");
  std::string verify_mode, verify_input, verify_cert;
  verify->add_option("mode", verify_mode, "exact | heuristic")->required();
  verify->add_option("input", verify_input, "point-cloud CSV")->required();
  verify->add_option("certificate", verify_cert, "net certificate JSON")->required();
  verify->add_option("--iterations", iterations, "heuristic iteration budget");
  verify->add_option("--exact-cap", exact_cap, "exact-mode cloud size cap");
  add_common(verify);

  // witness <cloud.csv> <net.csv> --D <half degree>
  auto* witness = app.add_subcommand(
      "witness", "construct a -Q^2+eta witness against an undersized candidate net");
  std::string wit_input, wit_net;
  witness->add_option("input", wit_input, "point-cloud CSV")->required();
  witness->add_option("net", wit_net, "candidate net CSV")->required();
  witness->add_option("--D", D, "half degree (witness has degree 2D)");
  add_common(witness);

  // depth <cloud.csv> [--at x1,x2,...]
  auto* depth = app.add_subcommand("depth", "Tukey depth of a point, or a certified centerpoint");
  std::string depth_input, depth_at;
  depth->add_option("input", depth_input, "point-cloud CSV")->required();
  depth->add_option("--at", depth_at, "query point 'x1,x2,...'; omitted: compute a centerpoint");
  add_common(depth);

  auto* bounds = app.add_subcommand("bounds", "Caratheodory number bound formulas");
  bounds->add_option("--n", n, "number of variables");
  bounds->add_option("--k", k, "half degree (D = 2k)");
  add_common(bounds);

  auto* griddim = app.add_subcommand("griddim", "vanishing-ideal dimension of the {1..k}^n grid");
  griddim->add_option("--n", n, "number of variables");
  griddim->add_option("--k", k, "grid side / half degree");
  add_common(griddim);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  if (format != "json" && format != "csv")
    throw std::invalid_argument("--format must be json or csv");

  if (gen->parsed()) {
    const PointCloud cloud = gen_cloud(gen_kind, n, N, k, seed);
    if (out_path.empty())
      write_cloud_csv(std::cout, cloud);
    else
      write_cloud_csv_file(out_path, cloud);
    return 0;
  }

  if (net->parsed()) {
    const PointCloud cloud = read_cloud_csv_file(net_input);
    NetCertificate cert;
    if (net_kind == "weak2") {
      if (D != 2 && net->count("--D") > 0)
        throw std::invalid_argument("net weak2: degree is fixed at 2");
      cert = weak_net_quadratic(cloud, tol);
    } else if (net_kind == "strong") {
      cert = strong_net(cloud, D, tol);
    } else {
      throw std::invalid_argument("net: kind must be weak2 or strong");
    }
    emit_json(to_json(cert), out_path);
    return 0;
  }

  if (verify->parsed()) {
    const PointCloud cloud = read_cloud_csv_file(verify_input);
    std::ifstream certf(verify_cert);
    if (!certf) throw std::invalid_argument("cannot open certificate: " + verify_cert);
    nlohmann::json cj;
    try {
      certf >> cj;
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument(std::string("certificate JSON parse: ") + e.what());
    }
    const NetCertificate cert = net_certificate_from_json(cj);

    AdversaryReport rep;
    if (verify_mode == "exact") {
      ExactAdversaryOptions opts;
      opts.point_cap = exact_cap;
      rep = exact_min_mass(cloud, cert.net_points, cert.degree, tol, opts);
    } else if (verify_mode == "heuristic") {
      rep = heuristic_min_mass(cloud, cert.net_points, cert.degree, seed, iterations, tol);
    } else {
      throw std::invalid_argument("verify: mode must be exact or heuristic");
    }
    nlohmann::json j = to_json(rep);
    const bool ok = rep.kept_mass >= cert.guarantee - tol;
    j["guarantee"] = cert.guarantee;
    j["verified"] = ok;
    emit_json(j, out_path);
    return ok ? 0 : 1;
  }

  if (witness->parsed()) {
    const PointCloud cloud = read_cloud_csv_file(wit_input);
    const PointCloud net_cloud = read_cloud_csv_file(wit_net);
    auto [poly, kept] = non_net_witness(cloud, net_cloud.points(), D, tol);
    nlohmann::json j;
    j["type"] = "non_net_witness";
    j["half_degree"] = D;
    j["poly_n"] = poly.basis.n;
    j["poly_degree"] = poly.basis.degree;
    j["poly_coeffs"] = poly.coeffs;
    j["kept_mass"] = kept;
    emit_json(j, out_path);
    return 0;
  }

  if (depth->parsed()) {
    const PointCloud cloud = read_cloud_csv_file(depth_input);
    if (!depth_at.empty()) {
      const Vec q = parse_point(depth_at);
      if (q.size() != cloud.dim()) throw std::invalid_argument("--at: dimension mismatch");
      emit_json(to_json(tukey_depth(q, cloud, tol)), out_path);
    } else {
      const AffineFrame frame = affine_hull_reduce(cloud.points(), tol);
      const double target = 1.0 / static_cast<double>(frame.intrinsic_dim() + 1);
      const CenterpointResult r = centerpoint_with_certificate(cloud, target, tol);
      nlohmann::json j = to_json(r.certificate);
      j["target_mass"] = r.target_mass;
      j["intrinsic_dim"] = r.intrinsic_dim;
      emit_json(j, out_path);
    }
    return 0;
  }

  if (bounds->parsed()) {
    emit_json(to_json(caratheodory_bounds(n, k)), out_path);
    return 0;
  }

  if (griddim->parsed()) {
    emit_json(to_json(grid_vanishing_dimension(n, k)), out_path);
    return 0;
  }

  return 3;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const polynet::CapabilityError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 2;
  } catch (const polynet::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
