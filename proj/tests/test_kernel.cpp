#include "test_helpers.hpp"

#include "iplab/kernel.hpp"
#include "iplab/mixing.hpp"
#include "iplab/spectral.hpp"

using namespace iplab;
using namespace iplab::testing;

namespace {
GeneratorMatrix two_state() {
    return build_ip_generator(make_path(2), 1);
}
} // namespace

TEST_CASE("kernel at t=0 is the identity") {
    auto gen = build_ip_generator(make_complete(4), 2);
    TransitionKernel k(gen);
    REQUIRE(k.at(0.0).isIdentity(0.0));
    REQUIRE_THROWS_AS(k.at(-0.1), std::invalid_argument);
}

TEST_CASE("two-state chain closed forms") {
    auto gen = two_state();
    TransitionKernel k(gen);
    for (double t : {0.1, 0.5, 1.0, 2.5}) {
        Eigen::MatrixXd pt = k.at(t);
        require_close(pt(0, 0), 0.5 * (1 + std::exp(-2 * t)), 1e-10);
        require_close(pt(0, 1), 0.5 * (1 - std::exp(-2 * t)), 1e-10);
        require_close(worst_case_d(pt), 0.5 * std::exp(-2 * t), 1e-10);
    }
    require_close(k.at(1.0)(0, 0), 0.5676676416183064, 1e-10);
    require_close(mixing_time(gen, 0.25), std::log(2.0) / 2.0, 1e-5);
    require_close(relaxation_time(gen), 0.5, 1e-10);
}

TEST_CASE("kernel rows are stochastic and symmetric for reversible-uniform") {
    auto gen = build_ip_generator(make_cycle(5, 1.0, LawChoice::Uniform), 2);
    TransitionKernel k(gen);
    Eigen::MatrixXd pt = k.at(0.7);
    for (std::int64_t r = 0; r < pt.rows(); ++r) {
        require_close(pt.row(r).sum(), 1.0, 1e-12);
        REQUIRE(pt.row(r).minCoeff() >= -1e-14);
    }
    require_close((pt - pt.transpose()).cwiseAbs().maxCoeff(), 0.0, 1e-10);
}

TEST_CASE("power cache overflow streams identically") {
    auto gen = build_ip_generator(make_cycle(5), 2);
    TransitionKernel full(gen);
    TransitionKernel tiny(gen, default_budgets(), default_tols(), 3 * 20 * 20 * 8);
    for (double t : {0.3, 1.7, 6.0})
        REQUIRE((full.at(t) - tiny.at(t)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("semigroup property") {
    auto gen = build_rw_generator(make_cycle(5), 1);
    TransitionKernel k(gen);
    Eigen::MatrixXd lhs = k.at(1.3);
    Eigen::MatrixXd rhs = k.at(0.5) * k.at(0.8);
    REQUIRE((lhs - rhs).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("worst-case distance and its monotonicity") {
    auto gen = build_ip_generator(make_cycle(5), 2);
    TransitionKernel k(gen);
    // d(0) = 1 - pi_max for point-mass starts
    require_close(worst_case_d(k, 0.0), 1.0 - 1.0 / gen.size(), 1e-14);
    double prev = 2.0;
    for (double t = 0.0; t <= 3.0; t += 0.15) {
        const double d = worst_case_d(k, t);
        REQUIRE(d <= prev + 1e-9);
        prev = d;
    }
}

TEST_CASE("bar_d_1 dominates the worst-case distance") {
    auto gen = build_rw_generator(make_cycle(5), 1);
    TransitionKernel k(gen);
    for (double t : {0.2, 0.7, 1.5}) {
        Eigen::MatrixXd pt = k.at(t);
        REQUIRE(bar_d_k(gen.space, pt) >= worst_case_d(pt) - 1e-12);
    }
}

TEST_CASE("mixing time monotonicity and submultiplicativity") {
    auto gen = build_ip_generator(make_cycle(5), 2);
    TransitionKernel k(gen);
    const double t_quarter = mixing_time(gen, k, 0.25);
    REQUIRE(mixing_time(gen, k, 0.125) >= t_quarter - 1e-9);
    // t_mix(delta^l) <= l * t_mix(delta/2) with delta=1/4, l=3
    const double lhs = mixing_time(gen, k, std::pow(0.25, 3));
    const double rhs = 3.0 * mixing_time(gen, k, 0.125);
    REQUIRE(lhs <= rhs + 1e-6);
}

TEST_CASE("mixing time of a reducible chain is an error") {
    auto gen = build_rw_generator(disconnected_pairs(), 1);
    REQUIRE_THROWS_WITH(mixing_time(gen, 0.25), Catch::Matchers::ContainsSubstring("infinite"));
}

TEST_CASE("label erasure can only speed up mixing") {
    auto g = make_cycle(5);
    auto ip2 = build_ip_generator(g, 2);
    auto ex2 = project_to_exclusion(ip2);
    REQUIRE(mixing_time(ex2, 0.25) <= mixing_time(ip2, 0.25) + 1e-6);
}

TEST_CASE("relaxation times: K4 walk and CLR for IP(2)") {
    auto g = make_complete(4);
    require_close(relaxation_time(build_rw_generator(g, 1)), 0.25, 1e-10);
    require_close(relaxation_time(build_ip_generator(g, 2)), 0.25, 1e-10);
}

TEST_CASE("spectral gap requires reversibility") {
    // deterministic 3-cycle law: doubly stochastic but not reversible
    HypergraphInstance g;
    g.n = 3;
    g.edges.push_back(make_edge({0, 1, 2}, 1.0,
                                PermutationLaw::explicit_law({{{1, 2, 0}, 1.0}})));
    auto gen = build_rw_generator(g, 1);
    REQUIRE(gen.uniform_stationary);
    REQUIRE_FALSE(gen.reversible);
    REQUIRE_THROWS_WITH(spectral_gap(gen),
                        Catch::Matchers::ContainsSubstring("spectral gap undefined"));
}

TEST_CASE("large sparse gap via the automatic iterative route") {
    // IP(2) on the 50-cycle has 2450 states, above the dense limit; the
    // answer is pinned by the walk's closed form
    auto gen = build_ip_generator(make_cycle(50), 2);
    REQUIRE(gen.size() > default_budgets().dense_states);
    const double gap = spectral_gap(gen);
    const double exact = 2.0 * (1.0 - std::cos(2.0 * M_PI / 50.0));
    require_close(gap / exact, 1.0, 1e-9);
}

TEST_CASE("iterative eigensolver agrees with the dense path") {
    auto g = make_torus(2, 10);
    auto gen = build_rw_generator(g, 1);
    const double dense = spectral_gap(gen);
    Budgets force_iterative;
    force_iterative.dense_states = 10;
    const double lanczos = spectral_gap(gen, force_iterative);
    require_close(lanczos / dense, 1.0, 1e-8);
    // cycle-product oracle: gap of the torus walk equals the cycle gap
    require_close(dense, 2.0 * (1.0 - std::cos(2.0 * M_PI / 10.0)), 1e-9);
}

TEST_CASE("vector exponential matches the dense kernel") {
    auto gen = build_rw_generator(make_cycle(6), 1);
    TransitionKernel k(gen);
    Eigen::MatrixXd pt = k.at(0.9);
    Eigen::VectorXd row = distribution_at(gen, 2, 0.9);
    for (int c = 0; c < 6; ++c) require_close(row[c], pt(2, c), 1e-9);
}

TEST_CASE("tv curve export grid is monotone") {
    auto gen = build_ip_generator(make_cycle(5), 2);
    std::vector<double> times;
    for (int i = 0; i <= 20; ++i) times.push_back(0.2 * i);
    TVCurve curve = tv_curve(gen, times, true);
    for (std::size_t i = 1; i < curve.d.size(); ++i) {
        REQUIRE(curve.d[i] <= curve.d[i - 1] + 1e-9);
        REQUIRE(curve.bar_dk[i] <= curve.bar_dk[i - 1] + 1e-9);
    }
    REQUIRE(curve.bar_dk[0] == 1.0); // distinct starts at t=0
}
