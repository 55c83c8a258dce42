#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "profile_atlas/census.hpp"
#include "profile_atlas/flags.hpp"

using namespace patlas;

namespace {

Graph make(const char* text) { return parse_graph(text); }

const char* kP3 = "3 2\n0 1\n1 2";

FlaggedGraph edge_flag() {
    Graph e(2);
    e.add_edge(0, 1);
    return {e, {0}};
}

FlaggedGraph nonedge_flag() { return {Graph(2), {0}}; }

Graph random_graph(int n, double p, std::mt19937_64& rng) {
    Graph g(n);
    std::bernoulli_distribution coin(p);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng)) g.add_edge(u, v);
    return g;
}

}  // namespace

TEST_CASE("flag_isomorphic respects the flag") {
    const Graph p3 = make(kP3);
    CHECK_FALSE(flag_isomorphic({p3, {1}}, {p3, {0}}));  // center vs leaf
    const Graph p3b = make("3 2\n0 1\n0 2");             // center at 0
    CHECK(flag_isomorphic({p3, {0}}, {p3b, {1}}));       // leaf vs leaf
    CHECK(flag_isomorphic({p3, {1}}, {p3b, {0}}));       // center vs center
    CHECK_FALSE(flag_isomorphic(edge_flag(), nonedge_flag()));
}

TEST_CASE("enumerate_flags class counts") {
    const auto f21 = enumerate_flags(2, 1);
    REQUIRE(f21.size() == 2);
    CHECK(flag_isomorphic(f21[0], nonedge_flag()));
    CHECK(flag_isomorphic(f21[1], edge_flag()));

    const auto tf31 = enumerate_flags(3, 1, [](const Graph& g) { return !has_triangle(g); });
    CHECK(tf31.size() == 5);

    CHECK(enumerate_flags(2, 2).size() == 2);
    CHECK_THROWS_AS(enumerate_flags(6, 1), std::invalid_argument);
}

TEST_CASE("enumerate_flags order is deterministic") {
    const auto a = enumerate_flags(3, 1);
    const auto b = enumerate_flags(3, 1);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].base == b[i].base);
        CHECK(a[i].flag == b[i].flag);
    }
}

TEST_CASE("pair densities of the path (Example 4.3)") {
    const Graph p3 = make(kP3);
    CHECK(pair_density(nonedge_flag(), nonedge_flag(), p3) == Rat(0));
    CHECK(pair_density(edge_flag(), edge_flag(), p3) == Rat(1, 3));
    CHECK(pair_density(nonedge_flag(), edge_flag(), p3) == Rat(1, 3));

    CHECK_THROWS_AS(pair_density(nonedge_flag(), FlaggedGraph(Graph(2), {}), p3),
                    std::invalid_argument);
    CHECK_THROWS_AS(pair_density(nonedge_flag(), edge_flag(), Graph(2)), std::invalid_argument);
}

TEST_CASE("flag matrices of the three triangle-free types") {
    const auto flags = enumerate_flags(2, 1);
    const FlagMatrix a_p3 = flag_matrix(flags, make(kP3));
    CHECK(a_p3.at(0, 0) == Rat(0));
    CHECK(a_p3.at(0, 1) == Rat(1, 3));
    CHECK(a_p3.at(1, 1) == Rat(1, 3));

    const FlagMatrix a_empty = flag_matrix(flags, Graph(3));
    CHECK(a_empty.at(0, 0) == Rat(1));
    CHECK(a_empty.at(0, 1) == Rat(0));
    CHECK(a_empty.at(1, 1) == Rat(0));

    const FlagMatrix a_p3bar = flag_matrix(flags, make("3 1\n0 1"));
    CHECK(a_p3bar.at(0, 0) == Rat(1, 3));
    CHECK(a_p3bar.at(0, 1) == Rat(1, 3));
    CHECK(a_p3bar.at(1, 1) == Rat(0));
}

TEST_CASE("flag_matrix is symmetric and relabeling-invariant") {
    std::mt19937_64 rng(5);
    const auto flags = enumerate_flags(2, 1);
    for (int trial = 0; trial < 5; ++trial) {
        const Graph g = random_graph(7, 0.5, rng);
        const FlagMatrix a = flag_matrix(flags, g);
        CHECK(a.at(0, 1) == a.at(1, 0));

        std::vector<int> perm(g.n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        Graph h(g.n);
        for (int u = 0; u < g.n; ++u)
            for (int v = u + 1; v < g.n; ++v)
                if (g.has_edge(u, v)) h.add_edge(perm[u], perm[v]);
        CHECK(flag_matrix(flags, h) == a);
    }
}

TEST_CASE("B^G equals its Gram factorization exactly and is PSD") {
    std::mt19937_64 rng(17);
    const auto flags = enumerate_flags(2, 1);
    for (int trial = 0; trial < 8; ++trial) {
        const Graph g = random_graph(3 + int(rng() % 5), 0.5, rng);
        const FlagMatrix b = flag_matrix_independent(flags, g);
        REQUIRE(b == flag_gram(flags, g).product());
        CHECK(min_eigenvalue(b.to_double()) >= -1e-14);
        CHECK(psd_distance(b.to_double()) <= 1e-14);
    }
    // larger flags too: (3,1) on a 6-vertex graph
    const auto f31 = enumerate_flags(3, 1);
    const Graph g = random_graph(6, 0.5, rng);
    const FlagMatrix b = flag_matrix_independent(f31, g);
    REQUIRE(b == flag_gram(f31, g).product());
    CHECK(psd_distance(b.to_double()) <= 1e-13);
}

TEST_CASE("B^{P3} matches a hand enumeration of ordered 1-subsets") {
    // n=3, k=1: scale 1/3, one column per choice of U
    const auto flags = enumerate_flags(2, 1);
    const auto gram = flag_gram(flags, make(kP3));
    REQUIRE(gram.cols == 3);
    CHECK(gram.scale == Rat(1, 3));
    // columns for U={0},{1},{2}: P(extension is a non-edge / an edge)
    // deg(0)=deg(2)=1, deg(1)=2
    CHECK(gram.at(0, 0) == Rat(1, 2));
    CHECK(gram.at(1, 0) == Rat(1, 2));
    CHECK(gram.at(0, 1) == Rat(0));
    CHECK(gram.at(1, 1) == Rat(1));
    CHECK(gram.at(0, 2) == Rat(1, 2));
    CHECK(gram.at(1, 2) == Rat(1, 2));
}

TEST_CASE("A^G approaches B^G at rate 1/n") {
    std::mt19937_64 rng(23);
    const auto flags = enumerate_flags(2, 1);
    double dev[2];
    const int sizes[2] = {16, 32};
    for (int i = 0; i < 2; ++i) {
        const Graph g = random_graph(sizes[i], 0.5, rng);
        const FlagMatrix a = flag_matrix(flags, g);
        const FlagMatrix b = flag_matrix_independent(flags, g);
        double m = 0;
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c)
                m = std::max(m, std::abs(to_double(a.at(r, c)) - to_double(b.at(r, c))));
        dev[i] = m;
        CHECK(m <= 2.0 / sizes[i]);
    }
    // halving n doubles the gap, roughly
    CHECK(dev[0] / dev[1] > 1.2);
    CHECK(dev[0] / dev[1] < 3.5);
}

TEST_CASE("profile_combination") {
    const auto flags = enumerate_flags(2, 1);
    const std::vector<FlagMatrix> mats = {flag_matrix(flags, Graph(3)),
                                          flag_matrix(flags, make("3 1\n0 1")),
                                          flag_matrix(flags, make(kP3))};
    const double e1[3] = {1, 0, 0};
    SymMatrix m = profile_combination(e1, mats);
    CHECK(m.at(0, 0) == 1.0);
    CHECK(m.at(1, 1) == 0.0);

    const double e3[3] = {0, 0, 1};
    m = profile_combination(e3, mats);
    CHECK_THAT(m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0),
               Catch::Matchers::WithinAbs(-1.0 / 9, 1e-15));
    CHECK(psd_distance(m) > 0.2);

    const double avg[3] = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    m = profile_combination(avg, mats);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double want = (to_double(mats[0].at(i, j)) + to_double(mats[1].at(i, j)) +
                                 to_double(mats[2].at(i, j))) /
                                3;
            CHECK_THAT(m.at(i, j), Catch::Matchers::WithinAbs(want, 1e-15));
        }

    const double bad[3] = {0.5, 0.6, -0.1};
    CHECK_THROWS_AS(profile_combination(bad, mats), std::invalid_argument);
}

TEST_CASE("psd_distance") {
    SymMatrix id(2);
    id.set(0, 0, 1);
    id.set(1, 1, 1);
    CHECK(psd_distance(id) == 0.0);

    SymMatrix d(2);
    d.set(0, 0, 1);
    d.set(1, 1, -2);
    CHECK_THAT(psd_distance(d), Catch::Matchers::WithinAbs(2.0, 1e-14));

    SymMatrix m(2);
    m.set(0, 1, 1.0 / 3);
    m.set(1, 1, 1.0 / 3);
    CHECK_THAT(psd_distance(m), Catch::Matchers::WithinAbs((std::sqrt(5.0) - 1) / 6, 1e-12));

    SymMatrix bad(2);
    bad.a = {0, 1, 2, 0};
    CHECK_THROWS_AS(psd_distance(bad), std::invalid_argument);
}

TEST_CASE("jacobi eigenvalues on a known 3x3") {
    SymMatrix m(3);
    m.set(0, 0, 2);
    m.set(1, 1, 3);
    m.set(2, 2, 2);
    m.set(0, 1, 1);
    m.set(1, 2, 1);
    auto ev = jacobi_eigenvalues(m);
    std::sort(ev.begin(), ev.end());
    // char poly roots: 1, 2, 4
    CHECK_THAT(ev[0], Catch::Matchers::WithinAbs(1.0, 1e-12));
    CHECK_THAT(ev[1], Catch::Matchers::WithinAbs(2.0, 1e-12));
    CHECK_THAT(ev[2], Catch::Matchers::WithinAbs(4.0, 1e-12));
}
