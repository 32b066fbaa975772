#include "sciswarm/metrics.hpp"

#include "sciswarm/errors.hpp"
#include "sciswarm/registry.hpp"
#include "sciswarm/review.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace sciswarm {

double consensus_variance(std::span<const Position> positions) {
    return position_variance(positions);
}

double mean_pairwise_distance(std::span<const Position> positions) {
    const std::size_t n = positions.size();
    if (n < 2) {
        return 0.0;
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double sq = 0.0;
            for (std::size_t k = 0; k < positions[i].size(); ++k) {
                const double d = positions[i][k] - positions[j][k];
                sq += d * d;
            }
            total += std::sqrt(sq);
        }
    }
    return total / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
}

namespace {

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
    while (parent[i] != i) {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    return i;
}

} // namespace

CampAssignment detect_camps(const std::vector<std::pair<LabId, Position>>& labs,
                            double link_threshold) {
    CampAssignment result;
    const std::size_t n = labs.size();
    if (n == 0) {
        return result;
    }
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    const double thr_sq = link_threshold * link_threshold;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double sq = 0.0;
            for (std::size_t k = 0; k < labs[i].second.size(); ++k) {
                const double d = labs[i].second[k] - labs[j].second[k];
                sq += d * d;
            }
            if (sq <= thr_sq) {
                parent[find_root(parent, i)] = find_root(parent, j);
            }
        }
    }
    // Canonical camp indices: order components by their smallest lab id.
    std::map<std::size_t, LabId> root_min_id;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t root = find_root(parent, i);
        auto it = root_min_id.find(root);
        if (it == root_min_id.end() || labs[i].first < it->second) {
            root_min_id[root] = labs[i].first;
        }
    }
    std::vector<std::pair<LabId, std::size_t>> ordered;
    ordered.reserve(root_min_id.size());
    for (const auto& [root, min_id] : root_min_id) {
        ordered.emplace_back(min_id, root);
    }
    std::sort(ordered.begin(), ordered.end());
    std::map<std::size_t, int> camp_of_root;
    for (std::size_t c = 0; c < ordered.size(); ++c) {
        camp_of_root[ordered[c].second] = static_cast<int>(c);
    }
    for (std::size_t i = 0; i < n; ++i) {
        result.assignment[labs[i].first] = camp_of_root[find_root(parent, i)];
    }
    result.camp_count = static_cast<int>(ordered.size());
    return result;
}

namespace {

// 1-based average ranks (ties share the mean of their rank block).
std::vector<double> average_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) {
            ++j;
        }
        const double rank = (static_cast<double>(i + 1) + static_cast<double>(j + 1)) / 2.0;
        for (std::size_t k = i; k <= j; ++k) {
            ranks[order[k]] = rank;
        }
        i = j + 1;
    }
    return ranks;
}

} // namespace

std::optional<double> rank_correlation(std::span<const double> a, std::span<const double> b) {
    const std::size_t n = a.size();
    if (n != b.size() || n < 2) {
        return std::nullopt;
    }
    const auto constant = [](std::span<const double> v) {
        return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
    };
    if (constant(a) || constant(b)) {
        return std::nullopt;
    }
    const std::vector<double> ra = average_ranks(a);
    const std::vector<double> rb = average_ranks(b);
    double d_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = ra[i] - rb[i];
        d_sq += d * d;
    }
    const double nn = static_cast<double>(n);
    return 1.0 - 6.0 * d_sq / (nn * (nn * nn - 1.0));
}

double hypervolume_2d(const std::vector<ObjectiveVector>& front,
                      const ObjectiveVector& reference) {
    if (reference.size() != 2) {
        throw Unsupported("hypervolume is implemented for 2 objectives only");
    }
    for (const auto& f : front) {
        if (f.size() != 2) {
            throw Unsupported("hypervolume is implemented for 2 objectives only");
        }
        if (f[0] > reference[0] || f[1] > reference[1]) {
            throw BadReference("front point exceeds the reference point");
        }
    }
    if (front.empty()) {
        return 0.0;
    }
    std::vector<std::size_t> keep = non_dominated(front);
    std::vector<ObjectiveVector> pts;
    pts.reserve(keep.size());
    for (std::size_t i : keep) {
        pts.push_back(front[i]);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    // Sorted ascending by f1 (f2 strictly descending): vertical strips from
    // each point to the next point's f1 (the reference for the last).
    double area = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const double next_f1 = (i + 1 < pts.size()) ? pts[i + 1][0] : reference[0];
        area += (next_f1 - pts[i][0]) * (reference[1] - pts[i][1]);
    }
    return area;
}

} // namespace sciswarm
