#include "test_helpers.hpp"

#include "iplab/json_io.hpp"
#include "iplab/process.hpp"

using namespace iplab;
using namespace iplab::testing;

TEST_CASE("validate_instance accepts the canonical K4") {
    auto g = make_complete(4);
    REQUIRE(validate_instance(g).ok());
}

TEST_CASE("validate_instance flags broken invariants") {
    auto g = make_complete(4);
    g.edges[0].rate = 0.0;
    auto rep = validate_instance(g);
    REQUIRE_FALSE(rep.ok());
    bool found = false;
    for (const auto& v : rep.violations) found |= v.find("nonpositive rate") != std::string::npos;
    REQUIRE(found);

    auto h = make_single_hyperedge(4, 1.0, LawChoice::ThreeCycles);
    for (auto& atom : h.edges[0].law.atoms) atom.prob *= 0.9;
    auto rep2 = validate_instance(h);
    bool norm = false;
    for (const auto& v : rep2.violations) norm |= v.find("law not normalized") != std::string::npos;
    REQUIRE(norm);

    REQUIRE_FALSE(validate_instance(disconnected_pairs()).ok());

    HypergraphInstance tiny = make_path(2);
    tiny.allow_small = false;
    REQUIRE_FALSE(validate_instance(tiny).ok());
    tiny.allow_small = true;
    REQUIRE(validate_instance(tiny).ok());
}

TEST_CASE("interaction rate R") {
    REQUIRE(interaction_rate_R(make_complete(4)) == 12.0);
    REQUIRE(interaction_rate_R(make_single_hyperedge(4)) == 12.0);
    for (int n : {3, 5, 7})
        require_close(equilibrium_pair_rate(make_complete(n)), 1.0, 1e-14);

    // additive over disjoint edge lists
    auto g = make_complete_uniform(6, 3);
    HypergraphInstance a = g, b = g;
    a.edges.assign(g.edges.begin(), g.edges.begin() + 7);
    b.edges.assign(g.edges.begin() + 7, g.edges.end());
    require_close(interaction_rate_R(g), interaction_rate_R(a) + interaction_rate_R(b), 1e-12);
}

TEST_CASE("apply_permutation semantics") {
    auto g = make_complete(4);
    const Hyperedge& e01 = g.edges[0]; // {0,1}
    LabeledConfig c = {0, 1};
    REQUIRE(apply_permutation(c, e01, {0, 1}) == c); // identity
    REQUIRE(apply_permutation(c, e01, {1, 0}) == LabeledConfig{1, 0});

    Hyperedge e012 = make_edge({0, 1, 2}, 1.0);
    // cycle 0->1->2->0 as images of (0,1,2)
    REQUIRE(apply_permutation({0, 3}, e012, {1, 2, 0}) == LabeledConfig{1, 3});
    REQUIRE_THROWS_AS(apply_permutation({0, 3}, e012, {1, 1, 0}), std::invalid_argument);
}

TEST_CASE("apply_permutation preserves distinctness (property)") {
    auto g = make_complete_uniform(5, 3);
    CounterRng rng(17, 3);
    StateSpace space(SpaceKind::Tuples, 5, 3);
    for (int trial = 0; trial < 300; ++trial) {
        LabeledConfig c = space.state(rng.uniform_int(space.size()));
        const auto& e = g.edges[rng.uniform_int(g.edges.size())];
        auto images = detail::sample_edge_permutation(e, rng);
        LabeledConfig d = apply_permutation(c, e, images);
        std::set<int> uniq(d.begin(), d.end());
        REQUIRE(uniq.size() == d.size());
    }
}

TEST_CASE("enumerate_states counts and budget") {
    auto g4 = make_complete(4);
    auto g6 = make_complete(6);
    REQUIRE(enumerate_states(ip(g4, 2)).size() == 12);
    REQUIRE(enumerate_states(ex(g4, 2)).size() == 6);
    REQUIRE(enumerate_states(ip(g6, 3)).size() == 120);
    REQUIRE(enumerate_states(rw(g4, 3)).size() == 64);

    Budgets tiny;
    tiny.max_states = 10;
    try {
        enumerate_states(ip(g6, 3), tiny);
        FAIL("expected BudgetError");
    } catch (const BudgetError& ex) {
        REQUIRE(std::string(ex.what()).find("Monte Carlo") != std::string::npos);
    }
}

TEST_CASE("state spaces are lexicographic bijections") {
    for (auto kind : {SpaceKind::Words, SpaceKind::Tuples, SpaceKind::Subsets}) {
        StateSpace space(kind, 5, 3);
        LabeledConfig prev;
        for (std::int64_t i = 0; i < space.size(); ++i) {
            LabeledConfig s = space.state(i);
            REQUIRE(space.rank(s) == i);
            if (i > 0) REQUIRE(prev < s);
            prev = s;
        }
    }
}

TEST_CASE("instance JSON round-trips bit-exactly") {
    auto g = make_complete_uniform(5, 3);
    g.edges[0].rate = 0.1 + 0.2; // not exactly 0.3
    g.edges[1].rate = 1.0 / 3.0;
    g.edges[2].law = three_cycle_law(g.edges[2].vertices);
    json j = instance_to_json(g);
    HypergraphInstance h = instance_from_json(j);
    REQUIRE(h.n == g.n);
    REQUIRE(h.edges.size() == g.edges.size());
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        REQUIRE(h.edges[i].vertices == g.edges[i].vertices);
        REQUIRE(h.edges[i].rate == g.edges[i].rate); // bitwise
        REQUIRE(h.edges[i].law.kind == g.edges[i].law.kind);
        for (std::size_t a = 0; a < g.edges[i].law.atoms.size(); ++a) {
            REQUIRE(h.edges[i].law.atoms[a].images == g.edges[i].law.atoms[a].images);
            REQUIRE(h.edges[i].law.atoms[a].prob == g.edges[i].law.atoms[a].prob);
        }
    }
    REQUIRE(instance_to_json(h).dump() == j.dump());
}

TEST_CASE("named instance generators") {
    auto c5 = make_cycle(5);
    REQUIRE(c5.n == 5);
    REQUIRE(c5.edges.size() == 5);
    for (int i = 0; i < 5; ++i) {
        std::vector<int> want = {i, (i + 1) % 5};
        std::sort(want.begin(), want.end());
        REQUIRE(c5.edges[i].vertices == want);
        REQUIRE(c5.edges[i].rate == 1.0);
        REQUIRE(c5.edges[i].law.kind == LawKind::Transposition);
    }

    auto cu = make_complete_uniform(5, 3);
    REQUIRE(cu.edges.size() == 10);
    for (const auto& e : cu.edges) REQUIRE(e.law.kind == LawKind::Uniform);

    auto rm = make_three_cycle_example();
    REQUIRE(rm.n == 4);
    REQUIRE(rm.edges.size() == 1);
    REQUIRE(rm.edges[0].law.atoms.size() == 8);
    for (const auto& atom : rm.edges[0].law.atoms) {
        REQUIRE(atom.prob == 0.125);
        // a 3-cycle moves exactly three points
        int moved = 0;
        for (int i = 0; i < 4; ++i) moved += atom.images[i] != i;
        REQUIRE(moved == 3);
    }

    auto t = make_torus(2, 3);
    REQUIRE(t.n == 9);
    REQUIRE(t.edges.size() == 18);
    REQUIRE(validate_instance(t).ok());

    auto hc = make_hypercube(3);
    REQUIRE(hc.n == 8);
    REQUIRE(hc.edges.size() == 12);

    auto rr = make_random_regular(8, 3, 42);
    REQUIRE(validate_instance(rr).ok());
    for (int deg : vertex_degrees(rr)) REQUIRE(deg == 3);
    // deterministic given the seed
    auto rr2 = make_random_regular(8, 3, 42);
    REQUIRE(instance_to_json(rr).dump() == instance_to_json(rr2).dump());

    REQUIRE_THROWS_AS(generate_instance("nope", {}), std::invalid_argument);
}

TEST_CASE("process spec validation") {
    auto g = make_complete(4);
    const ProcessSpec too_many{ProcessKind::IP, 5, &g};
    REQUIRE_THROWS_AS(too_many.check(), std::invalid_argument);
    const ProcessSpec bad_q2{ProcessKind::Q2, 3, &g};
    REQUIRE_THROWS_AS(bad_q2.check(), std::invalid_argument);
    const ProcessSpec ok_q2{ProcessKind::Q2, 2, &g};
    REQUIRE_NOTHROW(ok_q2.check());
}
