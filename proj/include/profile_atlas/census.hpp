#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "profile_atlas/flags.hpp"
#include "profile_atlas/graph.hpp"
#include "profile_atlas/linalg.hpp"
#include "profile_atlas/rational.hpp"

namespace patlas {

enum class Family { All, TriangleFree, Bipartite };

inline const char* family_name(Family f) {
    switch (f) {
        case Family::All: return "all";
        case Family::TriangleFree: return "triangle-free";
        case Family::Bipartite: return "bipartite";
    }
    return "?";
}

inline bool has_triangle(const Graph& g) {
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v)
            if (g.has_edge(u, v) && (g.adj[u] & g.adj[v])) return true;
    return false;
}

inline bool is_bipartite(const Graph& g) {
    std::vector<int> color(g.n, -1);
    for (int start = 0; start < g.n; ++start) {
        if (color[start] >= 0) continue;
        color[start] = 0;
        std::vector<int> stack{start};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int u = 0; u < g.n; ++u) {
                if (!g.has_edge(u, v)) continue;
                if (color[u] < 0) {
                    color[u] = 1 - color[v];
                    stack.push_back(u);
                } else if (color[u] == color[v]) {
                    return false;
                }
            }
        }
    }
    return true;
}

inline bool in_family(const Graph& g, Family f) {
    switch (f) {
        case Family::All: return true;
        case Family::TriangleFree: return !has_triangle(g);
        case Family::Bipartite: return is_bipartite(g);
    }
    return false;
}

struct CensusEntry {
    std::uint64_t canon_mask = 0;  // minimum edge mask over the orbit
    Profile3 profile;
    std::uint64_t multiplicity = 0;  // labeled graphs in the class
};

struct Census {
    int n = 0;
    Family family = Family::All;
    std::vector<CensusEntry> classes;
};

/// Exhaustive isomorphism-class census over all labeled graphs on n <= 7
/// vertices. Iterates edge masks in ascending order and sweeps each orbit
/// with precomputed permutation tables, so the first mask seen in an orbit is
/// its canonical form.
inline Census enumerate_census(int n, Family family = Family::All) {
    if (n < 1 || n > 7) throw std::invalid_argument("enumerate_census: supported only for n <= 7");
    const int edges = n * (n - 1) / 2;

    // one edge-bit relabeling table per vertex permutation
    std::vector<std::array<std::uint8_t, 21>> tables;
    {
        std::vector<int> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        do {
            std::array<std::uint8_t, 21> t{};
            for (int v = 1; v < n; ++v)
                for (int u = 0; u < v; ++u)
                    t[edge_bit(u, v)] = static_cast<std::uint8_t>(edge_bit(perm[u], perm[v]));
            tables.push_back(t);
        } while (std::next_permutation(perm.begin(), perm.end()));
    }

    const std::uint64_t total = std::uint64_t{1} << edges;
    std::vector<bool> visited(total, false);
    Census census;
    census.n = n;
    census.family = family;

    for (std::uint64_t mask = 0; mask < total; ++mask) {
        if (visited[mask]) continue;
        std::uint64_t orbit = 0;
        for (const auto& t : tables) {
            std::uint64_t image = 0;
            std::uint64_t bits = mask;
            while (bits) {
                const int b = std::countr_zero(bits);
                bits &= bits - 1;
                image |= std::uint64_t{1} << t[b];
            }
            if (!visited[image]) {
                visited[image] = true;
                ++orbit;
            }
        }
        const Graph rep = graph_from_mask(n, mask);
        if (!in_family(rep, family)) continue;
        CensusEntry entry;
        entry.canon_mask = mask;
        entry.multiplicity = orbit;
        if (n >= 3) entry.profile = profile3(rep);
        census.classes.push_back(entry);
    }
    return census;
}

inline void census_save_csv(const Census& census, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("census_save_csv: cannot open " + path);
    out << "canon_hex,p0,p1,p2,p3,multiplicity\n";
    for (const auto& e : census.classes) {
        char hex[32];
        std::snprintf(hex, sizeof hex, "%llx", static_cast<unsigned long long>(e.canon_mask));
        out << hex << ',' << rat_str(e.profile.p0) << ',' << rat_str(e.profile.p1) << ','
            << rat_str(e.profile.p2) << ',' << rat_str(e.profile.p3) << ',' << e.multiplicity
            << '\n';
    }
}

inline Census census_load_csv(int n, Family family, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("census_load_csv: cannot open " + path);
    Census census;
    census.n = n;
    census.family = family;
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::string field;
        CensusEntry e;
        std::getline(ls, field, ',');
        e.canon_mask = std::stoull(field, nullptr, 16);
        Rat* parts[4] = {&e.profile.p0, &e.profile.p1, &e.profile.p2, &e.profile.p3};
        for (Rat* r : parts) {
            std::getline(ls, field, ',');
            *r = Rat(field);
        }
        std::getline(ls, field, ',');
        e.multiplicity = std::stoull(field);
        census.classes.push_back(e);
    }
    return census;
}

/// Census with an optional CSV cache under PROFILE_ATLAS_CACHE.
inline Census enumerate_census_cached(int n, Family family = Family::All) {
    const char* dir = std::getenv("PROFILE_ATLAS_CACHE");
    if (!dir || !*dir) return enumerate_census(n, family);
    std::filesystem::path path(dir);
    std::error_code ec;
    std::filesystem::create_directories(path, ec);
    path /= "census_n" + std::to_string(n) + "_" + family_name(family) + ".csv";
    if (std::filesystem::exists(path)) return census_load_csv(n, family, path.string());
    Census census = enumerate_census(n, family);
    census_save_csv(census, path.string());
    return census;
}

/// The r-vertex isomorphism types H_alpha of a family, as graphs, in census order.
inline std::vector<Graph> census_types(int r, Family family = Family::All) {
    std::vector<Graph> out;
    for (const auto& e : enumerate_census(r, family).classes)
        out.push_back(graph_from_mask(r, e.canon_mask));
    return out;
}

struct TotalProbabilityReport {
    int n = 0;
    std::uint64_t checked = 0;
    std::uint64_t violations = 0;
};

/// Exact check of A^G = sum_alpha d(H_alpha;G) A^{H_alpha} over the census,
/// with H_alpha the 3-vertex types (r = 3).
inline TotalProbabilityReport verify_total_probability(int n, std::span<const FlaggedGraph> flags,
                                                       Family family = Family::All) {
    if (n < 3) throw std::invalid_argument("verify_total_probability: need n >= 3");
    const std::vector<Graph> types = census_types(3, family);
    std::vector<FlagMatrix> type_matrices;
    for (const Graph& h : types) type_matrices.push_back(flag_matrix(flags, h));

    TotalProbabilityReport report;
    report.n = n;
    for (const auto& entry : enumerate_census(n, family).classes) {
        const Graph g = graph_from_mask(n, entry.canon_mask);
        const FlagMatrix lhs = flag_matrix(flags, g);
        FlagMatrix rhs(lhs.dim);
        for (std::size_t a = 0; a < types.size(); ++a) {
            const Rat d = induced_density(types[a], g);
            for (int i = 0; i < lhs.dim; ++i)
                for (int j = i; j < lhs.dim; ++j)
                    rhs.set(i, j, rhs.at(i, j) + d * type_matrices[a].at(i, j));
        }
        ++report.checked;
        if (!(lhs == rhs)) ++report.violations;
    }
    return report;
}

/// Exact minimum of p0 + p3 over the n-vertex census.
inline Rat min_goodman(int n) {
    if (n < 3) throw std::invalid_argument("min_goodman: need n >= 3");
    Rat best = 2;
    for (const auto& e : enumerate_census(n).classes)
        best = std::min(best, Rat(e.profile.p0 + e.profile.p3));
    return best;
}

struct PsdDefectReport {
    int n = 0;
    std::uint64_t classes = 0;
    double max_defect = 0;      // max Frobenius distance of A^G to the PSD cone
    double constant = 0;        // n * max_defect
};

inline PsdDefectReport psd_defect_scan(int n, Family family, std::span<const FlaggedGraph> flags) {
    if (n < 3) throw std::invalid_argument("psd_defect_scan: need n >= 3");
    PsdDefectReport report;
    report.n = n;
    for (const auto& entry : enumerate_census(n, family).classes) {
        const Graph g = graph_from_mask(n, entry.canon_mask);
        report.max_defect =
            std::max(report.max_defect, psd_distance(flag_matrix(flags, g).to_double()));
        ++report.classes;
    }
    report.constant = n * report.max_defect;
    return report;
}

/// One CSV row of exact profile coordinates per isomorphism class.
inline std::string scatter_census(int n, Family family = Family::All) {
    std::ostringstream out;
    out << "p0,p1,p2,p3\n";
    char buf[256];
    for (const auto& e : enumerate_census(n, family).classes) {
        std::snprintf(buf, sizeof buf, "%.15g,%.15g,%.15g,%.15g\n", to_double(e.profile.p0),
                      to_double(e.profile.p1), to_double(e.profile.p2), to_double(e.profile.p3));
        out << buf;
    }
    return out.str();
}

}  // namespace patlas
