#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>

#include "spectra1d/errors.hpp"
#include "spectra1d/numeric.hpp"
#include "spectra1d/weak_coupling.hpp"

using namespace spectra1d;

namespace {

std::vector<double> quartic_samples(int m) {
    std::vector<double> v(m);
    const double h = 16.0 / (m - 1);
    for (int i = 0; i < m; ++i) {
        const double x = -8.0 + i * h;
        v[i] = x * x * x * x;
    }
    return v;
}

const DegenerateLevel& level_of(const std::vector<DegenerateLevel>& levels,
                                const std::vector<int>& multiset) {
    for (const auto& lv : levels)
        if (lv.multiset == multiset) return lv;
    throw std::runtime_error("level not found");
}

// Independent W builder for spectrum cross-checks.
Eigen::MatrixXd brute_w(const DegenerateLevel& level, const TwoBodyTensor& tensor) {
    const int dim = static_cast<int>(level.states.size());
    const int n = static_cast<int>(level.multiset.size());
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(dim, dim);
    for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) {
            const auto& u = level.states[a].orbitals;
            const auto& v = level.states[b].orbitals;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) {
                    bool rest_equal = true;
                    for (int k = 0; k < n; ++k)
                        if (k != i && k != j && u[k] != v[k]) rest_equal = false;
                    if (rest_equal) w(a, b) += tensor.get(u[i], u[j], v[i], v[j]);
                }
        }
    return w;
}

} // namespace

TEST_CASE("harmonic N=3 level structure below e_cut=4") {
    const auto basis = one_body_solve(TrapSpec::harmonic(), 6);
    const auto levels = enumerate_levels(basis, 3, 4.0);
    REQUIRE(levels.size() == 4);
    CHECK(levels[0].energy == doctest::Approx(1.5));
    CHECK(levels[0].multiset == std::vector<int>{0, 0, 0});
    CHECK(levels[0].states.size() == 1);
    CHECK(levels[0].generic());
    CHECK(levels[1].energy == doctest::Approx(2.5));
    CHECK(levels[1].multiset == std::vector<int>{0, 0, 1});
    CHECK(levels[1].states.size() == 3);
    CHECK(levels[1].generic());
    // 3.5 hosts {0,0,2} and {0,1,1}: flagged accidental, not merged
    CHECK(levels[2].energy == doctest::Approx(3.5));
    CHECK(levels[3].energy == doctest::Approx(3.5));
    CHECK(levels[2].multiset == std::vector<int>{0, 0, 2});
    CHECK(levels[3].multiset == std::vector<int>{0, 1, 1});
    CHECK(levels[2].states.size() == 3);
    CHECK(levels[3].states.size() == 3);
    CHECK(!levels[2].generic());
    CHECK(levels[3].generic() == false);
    CHECK(levels[2].accidental_partners == std::vector<std::vector<int>>{{0, 1, 1}});
}

TEST_CASE("well N=2: the first Pythagorean-type coincidence is flagged") {
    const auto basis = one_body_solve(TrapSpec::infinite_well(), 9);
    const double e65 = 65.0 * M_PI * M_PI / 2.0;
    const auto levels = enumerate_levels(basis, 2, e65 + 1e-6);
    const auto& a = level_of(levels, {0, 7});
    const auto& b = level_of(levels, {3, 6});
    CHECK(a.energy == doctest::Approx(e65));
    CHECK(b.energy == doctest::Approx(e65));
    CHECK(a.accidental_partners == std::vector<std::vector<int>>{{3, 6}});
    CHECK(b.accidental_partners == std::vector<std::vector<int>>{{0, 7}});
    // everything below is generic
    for (const auto& lv : levels)
        if (lv.energy < e65 - 1e-6) CHECK(lv.generic());
}

TEST_CASE("N=1 levels reproduce the one-body spectrum") {
    const auto basis = one_body_solve(TrapSpec::infinite_well(), 6);
    const auto levels = enumerate_levels(basis, 1, basis.energy(5) + 1e-9);
    REQUIRE(levels.size() == 6);
    for (int n = 0; n < 6; ++n) {
        CHECK(levels[n].energy == doctest::Approx(basis.energy(n)));
        CHECK(levels[n].states.size() == 1);
    }
}

TEST_CASE("harmonic counting: C(Q+N-1, N-1) states at total quanta Q") {
    const auto basis = one_body_solve(TrapSpec::harmonic(), 12);
    for (int n = 2; n <= 5; ++n) {
        const auto levels = enumerate_levels(basis, n, 6.0 + n * 0.5 + 1e-9);
        for (int q = 0; q <= 6; ++q) {
            const double energy = q + 0.5 * n;
            std::int64_t count = 0;
            for (const auto& lv : levels)
                if (std::abs(lv.energy - energy) < 1e-9) count += lv.states.size();
            std::int64_t expect = 1;
            for (int i = 1; i <= n - 1; ++i) expect = expect * (q + i) / i;
            CHECK(count == expect);
        }
    }
}

TEST_CASE("cutoff beyond basis coverage is refused") {
    const auto basis = one_body_solve(TrapSpec::harmonic(), 4);
    CHECK_THROWS_WITH_AS(enumerate_levels(basis, 2, 10.0), doctest::Contains("coverage"), Error);
}

TEST_CASE("N=2 distinct pair splits into {0, 2v} for every trap kind") {
    auto check_trap = [](const OneBodyBasis& basis) {
        const auto tensor = build_tensor(basis, 2);
        const auto levels = enumerate_levels(basis, 2, basis.energy(0) + basis.energy(1) + 1e-9);
        const auto& lv = level_of(levels, {0, 1});
        const auto report = first_order_splitting(lv, tensor);
        const double v = tensor.get(0, 1, 0, 1);
        REQUIRE(report.blocks.size() == 2);
        CHECK(report.solvable);
        for (const auto& block : report.blocks) {
            REQUIRE(block.size == 1);
            if (block.lambda == YoungDiagram({2}))
                CHECK(block.eigenvalues[0] == doctest::Approx(2.0 * v).epsilon(1e-10));
            else
                CHECK(std::abs(block.eigenvalues[0]) < 1e-12);
        }
    };
    check_trap(one_body_solve(TrapSpec::harmonic(), 2));
    check_trap(one_body_solve(TrapSpec::infinite_well(), 2));
    check_trap(one_body_solve(TrapSpec::grid(-8.0, 8.0, quartic_samples(4096)), 2, 1e-3));
}

TEST_CASE("all-distinct levels carry regular-representation blocks") {
    // N=3 in the well: {0,1,2} has the unique 3-square decomposition 1+4+9
    const auto well = one_body_solve(TrapSpec::infinite_well(), 4);
    const auto tensor3 = build_tensor(well, 3);
    const auto levels = enumerate_levels(well, 3, 14.0 * M_PI * M_PI / 2.0 + 1e-6);
    const auto& lv = level_of(levels, {0, 1, 2});
    CHECK(lv.generic());
    const auto report = first_order_splitting(lv, tensor3);
    CHECK(report.solvable);
    std::map<std::vector<int>, int> sizes;
    for (const auto& block : report.blocks) sizes[block.lambda.rows] = block.size;
    CHECK(sizes.at({3}) == 1);
    CHECK(sizes.at({2, 1}) == 2);
    CHECK(sizes.at({1, 1, 1}) == 1);

    // N=5 on the quartic grid: incommensurate spectrum, so {0,1,2,3,4} is generic
    const auto grid = one_body_solve(TrapSpec::grid(-8.0, 8.0, quartic_samples(4097)), 5, 1e-3);
    const auto tensor5 = build_tensor(grid, 5);
    double e5 = 0.0;
    for (int i = 0; i < 5; ++i) e5 += grid.energy(i);
    const auto glevels = enumerate_levels(grid, 5, e5 + 1e-9);
    const auto& glv = level_of(glevels, {0, 1, 2, 3, 4});
    CHECK(glv.generic());
    CHECK(glv.states.size() == 120);
    const auto greport = first_order_splitting(glv, tensor5);
    CHECK(!greport.solvable);
    std::map<std::vector<int>, int> gsizes;
    for (const auto& block : greport.blocks) gsizes[block.lambda.rows] = block.size;
    CHECK(gsizes.at({5}) == 1);
    CHECK(gsizes.at({4, 1}) == 4);
    CHECK(gsizes.at({3, 2}) == 5);
    CHECK(gsizes.at({3, 1, 1}) == 6);
    CHECK(gsizes.at({2, 2, 1}) == 5);
    CHECK(gsizes.at({2, 1, 1, 1}) == 4);
    CHECK(gsizes.at({1, 1, 1, 1, 1}) == 1);
}

TEST_CASE("trace preservation and block-spectrum completeness") {
    const auto basis = one_body_solve(TrapSpec::infinite_well(), 6);
    const auto tensor = build_tensor(basis, 6);
    const auto levels = enumerate_levels(basis, 3, 20.0 * M_PI * M_PI / 2.0 + 1e-6);
    for (const auto& lv : levels) {
        if (!lv.generic()) continue;
        const auto report = first_order_splitting(lv, tensor);
        double sum = 0.0;
        std::vector<double> expanded;
        for (const auto& block : report.blocks) {
            const auto d = standard_tableaux_count(block.lambda);
            for (double ev : block.eigenvalues) {
                sum += ev * d;
                for (int c = 0; c < d; ++c) expanded.push_back(ev);
            }
        }
        CHECK(sum == doctest::Approx(report.w_trace).epsilon(1e-10));
        // union of block eigenvalues (each repeated dim times) = spectrum of W
        auto w = brute_w(lv, tensor);
        const auto full = sym_eigenvalues(w);
        REQUIRE(expanded.size() == full.size());
        std::sort(expanded.begin(), expanded.end());
        for (std::size_t i = 0; i < full.size(); ++i)
            CHECK(expanded[i] == doctest::Approx(full[i]).epsilon(1e-8).scale(1.0));
    }
}

TEST_CASE("single-component fermions feel nothing at first order") {
    for (const auto& trap : {TrapSpec::harmonic(), TrapSpec::infinite_well()}) {
        const auto basis = one_body_solve(trap, 5);
        const auto tensor = build_tensor(basis, 5);
        const double e_cut = trap.kind == TrapKind::harmonic ? 6.5 : 15.0 * M_PI * M_PI / 2.0;
        for (const auto& lv : enumerate_levels(basis, 3, e_cut)) {
            if (!lv.generic()) continue;
            const auto report = first_order_splitting(lv, tensor);
            for (const auto& line : assemble_statistics(report, Statistics::fermion, 1)) {
                CHECK(line.lambda == YoungDiagram({1, 1, 1}));
                CHECK(std::abs(line.shift) < 1e-10);
            }
        }
    }
}

TEST_CASE("statistics assembly: admissible diagrams and spin multiplicities") {
    const auto basis = one_body_solve(TrapSpec::infinite_well(), 4);
    const auto tensor = build_tensor(basis, 3);
    const auto levels = enumerate_levels(basis, 3, 14.0 * M_PI * M_PI / 2.0 + 1e-6);
    const auto report = first_order_splitting(level_of(levels, {0, 1, 2}), tensor);

    const auto f1 = assemble_statistics(report, Statistics::fermion, 1);
    REQUIRE(f1.size() == 1);
    CHECK(f1[0].lambda == YoungDiagram({1, 1, 1}));
    CHECK(f1[0].spin_multiplicity == 1);

    const auto f2 = assemble_statistics(report, Statistics::fermion, 2);
    std::map<std::vector<int>, std::int64_t> mult;
    for (const auto& line : f2) mult[line.lambda.rows] = line.spin_multiplicity;
    CHECK(mult.size() == 2);
    CHECK(mult.at({1, 1, 1}) == 4);
    CHECK(mult.at({2, 1}) == 2);
    CHECK(mult.find({3}) == mult.end());

    // N=2, J=2 bosons: both diagrams retained with multiplicities 3 and 1
    const auto lv2 = enumerate_levels(basis, 2, 5.0 * M_PI * M_PI / 2.0 + 1e-6);
    const auto rep2 = first_order_splitting(level_of(lv2, {0, 1}), build_tensor(basis, 2));
    const auto b2 = assemble_statistics(rep2, Statistics::boson, 2);
    std::map<std::vector<int>, std::int64_t> bmult;
    for (const auto& line : b2) bmult[line.lambda.rows] = line.spin_multiplicity;
    CHECK(bmult.at({2}) == 3);
    CHECK(bmult.at({1, 1}) == 1);
}

TEST_CASE("accidental levels refuse the generic path but merge explicitly") {
    const auto basis = one_body_solve(TrapSpec::harmonic(), 6);
    const auto tensor = build_tensor(basis, 6);
    const auto levels = enumerate_levels(basis, 3, 4.0);
    const auto& acc = level_of(levels, {0, 0, 2});
    CHECK_THROWS_WITH_AS(first_order_splitting(acc, tensor), doctest::Contains("accidental"),
                         Error);
    const auto merged =
        first_order_splitting_merged({level_of(levels, {0, 0, 2}), level_of(levels, {0, 1, 1})},
                                     tensor);
    CHECK(!merged.generic);
    CHECK(merged.state_count == 6);
    int total = 0;
    for (const auto& block : merged.blocks)
        total += block.size * static_cast<int>(standard_tableaux_count(block.lambda));
    CHECK(total == 6);
    CHECK_THROWS_AS(
        first_order_splitting_merged({level_of(levels, {0, 0, 0}), level_of(levels, {0, 0, 1})},
                                     tensor),
        Error);
}
