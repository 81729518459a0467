#ifndef UOP_HDBSCAN_HPP
#define UOP_HDBSCAN_HPP

#include "uop/geo.hpp"

#include <span>
#include <vector>

namespace uop {

struct HdbscanResult {
    std::vector<int> labels; // -1 = noise, else 0..n_clusters-1
    int n_clusters = 0;
};

// Density clustering on the sphere: haversine metric, mutual-reachability
// distances over core distances with k = min_cluster_size, single-linkage
// hierarchy, condensed tree, excess-of-mass cluster selection. The root
// cluster is never selected, so degenerate inputs come back as all noise.
// Inputs shorter than min_cluster_size are all noise.
HdbscanResult hdbscan_geo(std::span<const GeoPoint> points, int min_cluster_size);

} // namespace uop

#endif
