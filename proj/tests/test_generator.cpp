#include "test_helpers.hpp"

#include "iplab/generator_matrix.hpp"
#include "iplab/spectral.hpp"

using namespace iplab;
using namespace iplab::testing;

TEST_CASE("two-vertex single edge gives the two-state generator") {
    auto g = make_path(2); // allow_small set by the generator
    auto gen = build_ip_generator(g, 1);
    Eigen::MatrixXd q = gen.dense();
    REQUIRE(q(0, 0) == -1.0);
    REQUIRE(q(0, 1) == 1.0);
    REQUIRE(q(1, 0) == 1.0);
    REQUIRE(q(1, 1) == -1.0);
}

TEST_CASE("K4 single-particle walk: unit rates, gap four") {
    auto gen = build_rw_generator(make_complete(4), 1);
    Eigen::MatrixXd q = gen.dense();
    for (int u = 0; u < 4; ++u)
        for (int v = 0; v < 4; ++v)
            REQUIRE(q(u, v) == (u == v ? -3.0 : 1.0));
    require_close(spectral_gap(gen), 4.0, 1e-10);
    require_close(relaxation_time(gen), 0.25, 1e-10);
}

TEST_CASE("uniform law on a 3-edge: rates from permutation enumeration") {
    auto g = make_single_hyperedge(3);
    auto gen = build_rw_generator(g, 1);
    Eigen::MatrixXd q = gen.dense();

    // independent oracle: enumerate all six permutations of the edge
    std::vector<int> verts = {0, 1, 2};
    Eigen::MatrixXd oracle = Eigen::MatrixXd::Zero(3, 3);
    std::vector<int> images = verts;
    std::sort(images.begin(), images.end());
    do {
        for (int i = 0; i < 3; ++i)
            if (images[i] != verts[i]) oracle(verts[i], images[i]) += 1.0 / 6.0;
    } while (std::next_permutation(images.begin(), images.end()));
    for (int i = 0; i < 3; ++i) oracle(i, i) = -oracle.row(i).sum();

    for (int u = 0; u < 3; ++u) {
        require_close(-q(u, u), 2.0 / 3.0, 1e-14);
        for (int v = 0; v < 3; ++v) require_close(q(u, v), oracle(u, v), 1e-14);
    }
}

TEST_CASE("uniform-law lifted rates match full permutation enumeration") {
    auto g = make_single_hyperedge(4);
    for (int k : {2, 3}) {
        auto gen = build_ip_generator(g, k);
        StateSpace space(SpaceKind::Tuples, 4, k);
        Eigen::MatrixXd oracle = Eigen::MatrixXd::Zero(space.size(), space.size());
        std::vector<int> img = {0, 1, 2, 3};
        do {
            for (std::int64_t s = 0; s < space.size(); ++s) {
                LabeledConfig a = space.state(s);
                LabeledConfig b(k);
                for (int i = 0; i < k; ++i) b[i] = img[a[i]];
                if (b != a) oracle(s, space.rank(b)) += 1.0 / 24.0;
            }
        } while (std::next_permutation(img.begin(), img.end()));
        for (std::int64_t i = 0; i < space.size(); ++i) oracle(i, i) = -oracle.row(i).sum();
        REQUIRE((gen.dense() - oracle).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("generator row sums vanish and off-diagonals are nonnegative") {
    for (const auto& [name, g] : uniform_law_instances()) {
        INFO(name);
        auto gen = build_ip_generator(g, 2);
        Eigen::MatrixXd q = gen.dense();
        for (std::int64_t r = 0; r < gen.size(); ++r) {
            require_close(q.row(r).sum(), 0.0, 1e-12);
            for (std::int64_t c = 0; c < gen.size(); ++c)
                if (c != r) REQUIRE(q(r, c) >= 0);
        }
    }
}

TEST_CASE("uniform interchange is reversible w.r.t. uniform for every k") {
    for (const auto& [name, g] : {uniform_law_instances()[0], uniform_law_instances()[8]}) {
        INFO(name);
        for (int k = 1; k <= std::min(4, g.n); ++k) {
            auto gen = build_ip_generator(g, k);
            REQUIRE(gen.uniform_stationary);
            REQUIRE(gen.reversible);
        }
    }
}

TEST_CASE("IP(2) assumption report on the canonical examples") {
    // K4 transposition graph: everything holds for all k <= 4
    auto rep = check_ip2_assumptions(make_complete(4), {3, 4});
    for (const auto& e : rep.entries) {
        REQUIRE(e.irreducible);
        REQUIRE(e.uniform_stationary);
        REQUIRE(e.reversible);
    }
    REQUIRE(rep.ip2_ok());

    // three-cycle law: IP(2) irreducible, IP(4) parity-trapped
    auto tc = make_three_cycle_example();
    auto rep2 = check_ip2_assumptions(tc, {4});
    REQUIRE(rep2.for_k(2)->irreducible);
    REQUIRE(rep2.for_k(2)->uniform_stationary);
    REQUIRE(rep2.for_k(2)->reversible); // the law is inverse-invariant
    REQUIRE_FALSE(rep2.for_k(4)->irreducible);
    auto ip4 = build_ip_generator(tc, 4);
    REQUIRE(ip4.size() == 24);
    REQUIRE(reachable_class_size(ip4, {0, 1, 2, 3}) == 12);

    // disconnected instance: IP(2) not irreducible
    auto rep3 = check_ip2_assumptions(disconnected_pairs());
    REQUIRE_FALSE(rep3.for_k(2)->irreducible);
}

TEST_CASE("exclusion projection") {
    auto g = make_complete(4);
    // EX(n): a single fully-occupied state with a zero generator
    auto exn = build_generator(ex(g, 4));
    REQUIRE(exn.size() == 1);
    REQUIRE(exn.rates.nonZeros() == 0);

    auto ip2 = build_ip_generator(g, 2);
    auto ex2 = project_to_exclusion(ip2);
    REQUIRE(ex2.size() == 6);
    REQUIRE(spectral_gap(ex2) >= spectral_gap(ip2) - 1e-10);

    // projection well defined on hypergraphs too
    auto h = make_complete_uniform(5, 3);
    REQUIRE_NOTHROW(project_to_exclusion(build_ip_generator(h, 2)));
}

TEST_CASE("independent walks tensorize") {
    auto g = make_cycle(5, 1.0, LawChoice::Uniform);
    auto rw1 = build_rw_generator(g, 1);
    auto rw2 = build_rw_generator(g, 2);
    require_close(spectral_gap(rw2), spectral_gap(rw1), 1e-10);
}

TEST_CASE("censored two-walk chain matches the first-step oracle on the 3-path") {
    auto g = make_path(3);
    auto q2 = build_censored_q2(g);
    REQUIRE(q2.size() == 6);
    StateSpace tuples(SpaceKind::Tuples, 3, 2);
    auto rate = [&](std::initializer_list<int> a, std::initializer_list<int> b) {
        LabeledConfig x(a), y(b);
        return q2.rates.coeff(tuples.rank(x), tuples.rank(y));
    };
    // hand-derived by first-step decomposition of the diagonal excursions
    require_close(rate({0, 1}, {0, 2}), 1.0, 1e-12);
    require_close(rate({0, 1}, {1, 0}), 0.75, 1e-12);
    require_close(rate({0, 1}, {1, 2}), 0.25, 1e-12);
    require_close(rate({0, 1}, {2, 1}), 0.25, 1e-12);
    require_close(rate({0, 2}, {1, 2}), 1.0, 1e-12);
    require_close(rate({0, 2}, {0, 1}), 1.0, 1e-12);
    require_close(rate({0, 2}, {2, 0}), 0.0, 1e-12);
    require_close(rate({1, 0}, {2, 0}), 1.0, 1e-12);
    require_close(rate({1, 0}, {0, 1}), 0.75, 1e-12);
    require_close(rate({1, 0}, {2, 1}), 0.25, 1e-12);
    require_close(rate({1, 0}, {1, 2}), 0.25, 1e-12);
    REQUIRE(q2.reversible);
    REQUIRE(q2.uniform_stationary);
}

TEST_CASE("censored rates only connect the four coordinate patterns") {
    for (const auto& g : {make_complete(4), make_complete_uniform(4, 3)}) {
        auto q2 = build_censored_q2(g);
        LabeledConfig x(2), y(2);
        for (std::int64_t r = 0; r < q2.size(); ++r) {
            q2.space.unrank(r, x);
            for (SparseRates::InnerIterator it(q2.rates, r); it; ++it) {
                if (it.col() == r || it.value() <= 0) continue;
                q2.space.unrank(it.col(), y);
                const bool pattern =
                    y[0] == x[0] || y[1] == x[1] || y[1] == x[0] || y[0] == x[1];
                REQUIRE(pattern);
            }
        }
    }
}

TEST_CASE("censored chain is reversible w.r.t. uniform") {
    for (const auto& g : {make_complete(4), make_complete_uniform(4, 3)}) {
        auto q2 = build_censored_q2(g);
        REQUIRE(q2.uniform_stationary);
        REQUIRE(q2.reversible);
        REQUIRE(q2.reversibility_residual <= 1e-10);
    }
}

TEST_CASE("censored relaxation never exceeds the two-walk relaxation") {
    CounterRng rng(2024, 9);
    int done = 0;
    for (std::uint64_t seed = 0; done < 10; ++seed) {
        HypergraphInstance g;
        const int pick = static_cast<int>(seed % 3);
        if (pick == 0)
            g = make_random_regular(6, 2 + static_cast<int>(seed % 2), seed);
        else if (pick == 1)
            g = make_complete_uniform(4 + seed % 3, 3);
        else
            g = make_cycle(4 + seed % 4, 1.0, LawChoice::Uniform);
        if (!validate_instance(g).ok()) continue;
        ++done;
        auto q2 = build_censored_q2(g);
        auto rw2 = build_rw_generator(g, 2);
        if (!q2.reversible || !rw2.reversible) continue;
        REQUIRE(relaxation_time(q2) <= relaxation_time(rw2) + 1e-9);
    }
}
