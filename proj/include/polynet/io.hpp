#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "polynet/adversary.hpp"
#include "polynet/bounds.hpp"
#include "polynet/depth.hpp"
#include "polynet/nets.hpp"
#include "polynet/poly.hpp"

namespace polynet {

/// CSV point-cloud format: header `x1,...,xn` with an optional trailing
/// `weight` column; decimal ASCII, locale-independent. Weights are normalized
/// on ingest; a missing weight column means uniform.
PointCloud read_cloud_csv(std::istream& in);
PointCloud read_cloud_csv_file(const std::string& path);
void write_cloud_csv(std::ostream& out, const PointCloud& cloud, bool with_weights = false);
void write_cloud_csv_file(const std::string& path, const PointCloud& cloud,
                          bool with_weights = false);

/// Seeded synthetic clouds; deterministic across platforms (counter-based
/// generator keyed by seed).
PointCloud gen_uniform_box(int n, std::size_t count, std::uint64_t seed);
PointCloud gen_gaussian(int n, std::size_t count, std::uint64_t seed);
PointCloud gen_annulus(int n, std::size_t count, std::uint64_t seed);
PointCloud gen_grid(int n, int k);
PointCloud gen_two_clusters(int n, std::size_t count, std::uint64_t seed);
PointCloud gen_cloud(const std::string& kind, int n, std::size_t count, int k, std::uint64_t seed);

nlohmann::json to_json(const NetCertificate& cert);
NetCertificate net_certificate_from_json(const nlohmann::json& j);

nlohmann::json to_json(const AdversaryReport& rep);
nlohmann::json to_json(const DepthCertificate& cert);
nlohmann::json to_json(const BoundsRecord& rec);
nlohmann::json to_json(const GridMeasurement& g);

void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace polynet
