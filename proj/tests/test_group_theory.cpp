#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "spectra1d/errors.hpp"
#include "spectra1d/irreps.hpp"
#include "spectra1d/isotypic.hpp"
#include "spectra1d/permutation.hpp"
#include "spectra1d/young.hpp"

using namespace spectra1d;

namespace {

Permutation random_perm(int n, std::mt19937_64& rng) {
    std::vector<int> im(n);
    for (int i = 0; i < n; ++i) im[i] = i + 1;
    std::shuffle(im.begin(), im.end(), rng);
    return Permutation(im);
}

} // namespace

TEST_CASE("compose follows the apply-q-first convention") {
    const Permutation t12(std::vector<int>{2, 1, 3});
    CHECK(t12.compose(t12) == Permutation::identity(3));

    std::mt19937_64 rng(42);
    const auto p = random_perm(4, rng);
    CHECK(Permutation::identity(4).compose(p) == p);
    CHECK(p.compose(Permutation::identity(4)) == p);

    const Permutation q(std::vector<int>{1, 3, 2});
    CHECK(t12.compose(q) == Permutation(std::vector<int>{2, 3, 1}));
}

TEST_CASE("degree mismatch is an error") {
    CHECK_THROWS_AS(Permutation::identity(3).compose(Permutation::identity(4)), Error);
    CHECK_THROWS_AS(Permutation(std::vector<int>{1, 1, 3}), Error);
    CHECK_THROWS_AS(Permutation(std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9}), Error);
}

TEST_CASE("group axioms by brute force up to degree 8") {
    std::mt19937_64 rng(7);
    for (int n = 1; n <= 8; ++n) {
        for (int trial = 0; trial < 30; ++trial) {
            const auto p = random_perm(n, rng);
            const auto q = random_perm(n, rng);
            const auto r = random_perm(n, rng);
            CHECK(p.compose(q).compose(r) == p.compose(q.compose(r)));
            CHECK(p.compose(p.inverse()) == Permutation::identity(n));
            CHECK(p.inverse().compose(p) == Permutation::identity(n));
        }
    }
}

TEST_CASE("adjacent factorization reconstructs the permutation") {
    std::mt19937_64 rng(11);
    for (int n = 2; n <= 7; ++n) {
        for (int trial = 0; trial < 20; ++trial) {
            const auto p = random_perm(n, rng);
            auto rebuilt = Permutation::identity(n);
            const auto ks = p.adjacent_factorization();
            for (auto it = ks.rbegin(); it != ks.rend(); ++it)
                rebuilt = Permutation::adjacent_transposition(n, *it).compose(rebuilt);
            CHECK(rebuilt == p);
        }
    }
}

TEST_CASE("plain changes walks the whole group one swap at a time") {
    for (int n = 2; n <= 6; ++n) {
        PlainChanges walk(n);
        std::vector<std::vector<int>> seen{walk.current().images()};
        while (true) {
            const int k = walk.next();
            if (k == 0) break;
            CHECK(k >= 1);
            CHECK(k <= n - 1);
            seen.push_back(walk.current().images());
        }
        std::sort(seen.begin(), seen.end());
        CHECK(std::unique(seen.begin(), seen.end()) == seen.end());
        std::int64_t nfact = 1;
        for (int i = 2; i <= n; ++i) nfact *= i;
        CHECK(static_cast<std::int64_t>(seen.size()) == nfact);
    }
}

TEST_CASE("standard tableaux counts: anchors and brute force") {
    CHECK(standard_tableaux_count(YoungDiagram({5})) == 1);
    CHECK(standard_tableaux_count(YoungDiagram({2, 1})) == 2);
    CHECK(standard_tableaux_count(YoungDiagram({3, 2})) == 5);
    for (int n = 1; n <= 8; ++n)
        for (const auto& lambda : partitions_of(n))
            CHECK(standard_tableaux_count(lambda) == oracles::count_standard_tableaux(lambda.rows));
}

TEST_CASE("sum of squared dimensions is N!") {
    std::int64_t nfact = 1;
    for (int n = 1; n <= 8; ++n) {
        nfact *= n;
        std::int64_t acc = 0;
        for (const auto& lambda : partitions_of(n)) {
            const auto f = standard_tableaux_count(lambda);
            acc += f * f;
        }
        CHECK(acc == nfact);
    }
}

TEST_CASE("semistandard counts: anchors and brute force") {
    CHECK(semistandard_count(YoungDiagram({1, 1}), 2) == 1);
    CHECK(semistandard_count(YoungDiagram({2}), 2) == 3);
    CHECK(semistandard_count(YoungDiagram({1, 1, 1}), 2) == 0);
    for (int n = 1; n <= 5; ++n)
        for (int j = 1; j <= 4; ++j)
            for (const auto& lambda : partitions_of(n))
                CHECK(semistandard_count(lambda, j) ==
                      oracles::count_semistandard(lambda.rows, j));
}

TEST_CASE("Schur-Weyl dimension sum") {
    for (int n = 1; n <= 6; ++n) {
        for (int j = 1; j <= 4; ++j) {
            std::int64_t acc = 0;
            for (const auto& lambda : partitions_of(n))
                acc += standard_tableaux_count(lambda) * semistandard_count(lambda, j);
            std::int64_t jn = 1;
            for (int i = 0; i < n; ++i) jn *= j;
            CHECK(acc == jn);
        }
    }
}

TEST_CASE("one-dimensional irreps") {
    const auto sign = irrep_matrices(YoungDiagram({1, 1}));
    CHECK(sign.dimension == 1);
    CHECK(sign.generator_matrices[0](0, 0) == doctest::Approx(-1.0));
    const auto triv = irrep_matrices(YoungDiagram({2}));
    CHECK(triv.generator_matrices[0](0, 0) == doctest::Approx(1.0));
}

TEST_CASE("mixed-symmetry irrep of S3 in Young orthogonal form") {
    const auto rep = irrep_matrices(YoungDiagram({2, 1}));
    REQUIRE(rep.dimension == 2);
    const auto& s1 = rep.generator_matrices[0];
    const auto& s2 = rep.generator_matrices[1];
    CHECK(s1(0, 0) == doctest::Approx(1.0));
    CHECK(s1(1, 1) == doctest::Approx(-1.0));
    CHECK(std::abs(s1(0, 1)) < 1e-15);
    CHECK(s2(0, 0) == doctest::Approx(-0.5));
    CHECK(s2(1, 1) == doctest::Approx(0.5));
    CHECK(s2(0, 1) == doctest::Approx(std::sqrt(3.0) / 2.0));
    CHECK(s2(1, 0) == doctest::Approx(std::sqrt(3.0) / 2.0));
}

TEST_CASE("irrep matrices satisfy the S_N relations to 1e-12") {
    for (int n = 2; n <= 6; ++n) {
        for (const auto& lambda : partitions_of(n)) {
            const auto rep = irrep_matrices(lambda);
            CHECK(rep.dimension == standard_tableaux_count(lambda));
            const int d = rep.dimension;
            const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
            for (int k = 0; k < n - 1; ++k) {
                const auto& m = rep.generator_matrices[k];
                CHECK((m - m.transpose()).cwiseAbs().maxCoeff() < 1e-12);
                CHECK((m * m - id).cwiseAbs().maxCoeff() < 1e-12);
            }
            for (int k = 0; k + 1 < n - 1; ++k) {
                const auto& a = rep.generator_matrices[k];
                const auto& b = rep.generator_matrices[k + 1];
                CHECK((a * b * a - b * a * b).cwiseAbs().maxCoeff() < 1e-12);
            }
            for (int k = 0; k < n - 1; ++k)
                for (int j = k + 2; j < n - 1; ++j) {
                    const auto& a = rep.generator_matrices[k];
                    const auto& b = rep.generator_matrices[j];
                    CHECK((a * b - b * a).cwiseAbs().maxCoeff() < 1e-12);
                }
        }
    }
}

TEST_CASE("irrep map is a homomorphism") {
    std::mt19937_64 rng(3);
    for (int n = 3; n <= 5; ++n) {
        for (const auto& lambda : partitions_of(n)) {
            const auto rep = irrep_matrices(lambda);
            for (int trial = 0; trial < 8; ++trial) {
                const auto p = random_perm(n, rng);
                const auto q = random_perm(n, rng);
                const Eigen::MatrixXd lhs = rep.matrix(p.compose(q));
                const Eigen::MatrixXd rhs = rep.matrix(p) * rep.matrix(q);
                CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
            }
        }
    }
}

TEST_CASE("Jucys-Murphy spectra") {
    CHECK(jucys_murphy_spectrum(YoungDiagram({2})) ==
          std::vector<std::vector<int>>{{0, 1}});
    CHECK(jucys_murphy_spectrum(YoungDiagram({1, 1})) ==
          std::vector<std::vector<int>>{{0, -1}});
    const auto s3 = jucys_murphy_spectrum(YoungDiagram({2, 1}));
    REQUIRE(s3.size() == 2);
    CHECK(s3[0] == std::vector<int>{0, 1, -1});
    CHECK(s3[1] == std::vector<int>{0, -1, 1});
}

TEST_CASE("Jucys-Murphy content vectors separate the GT basis") {
    for (int n = 2; n <= 6; ++n) {
        for (const auto& lambda : partitions_of(n)) {
            auto spec = jucys_murphy_spectrum(lambda);
            std::sort(spec.begin(), spec.end());
            CHECK(std::unique(spec.begin(), spec.end()) == spec.end());
        }
    }
}

namespace {

// Left-regular action of S_n on itself as a PermutationAction.
PermutationAction regular_action(int n) {
    const auto elems = all_permutations(n);
    std::map<std::vector<int>, int> index;
    for (std::size_t i = 0; i < elems.size(); ++i) index[elems[i].images()] = static_cast<int>(i);
    PermutationAction action;
    action.degree = n;
    action.dimension = static_cast<int>(elems.size());
    for (int k = 1; k <= n - 1; ++k) {
        const auto sk = Permutation::adjacent_transposition(n, k);
        std::vector<int> map(elems.size());
        for (std::size_t i = 0; i < elems.size(); ++i)
            map[i] = index.at(sk.compose(elems[i]).images());
        action.generator_maps.push_back(std::move(map));
    }
    return action;
}

// Multiplicities by character inner products, fully independent of the
// projector machinery: m_lambda = (1/N!) sum_g chi_lambda(g) . fix(g).
std::map<std::vector<int>, std::int64_t> multiplicities_by_characters(
    const PermutationAction& action) {
    const auto elems = all_permutations(action.degree);
    std::map<std::vector<int>, std::int64_t> sums;
    std::int64_t order = 0;
    for (const auto& g : elems) {
        ++order;
        // build the action of g by composing generator maps along a factorization
        std::vector<int> map(action.dimension);
        for (int i = 0; i < action.dimension; ++i) map[i] = i;
        const auto ks = g.adjacent_factorization();
        for (auto it = ks.rbegin(); it != ks.rend(); ++it) {
            std::vector<int> next(action.dimension);
            for (int i = 0; i < action.dimension; ++i)
                next[i] = action.generator_maps[*it - 1][map[i]];
            map = next;
        }
        std::int64_t fixed = 0;
        for (int i = 0; i < action.dimension; ++i)
            if (map[i] == i) ++fixed;
        const auto type = oracles::cycle_type(g.images());
        for (const auto& lambda : partitions_of(action.degree))
            sums[lambda.rows] += oracles::mn_character(lambda.rows, type) * fixed;
    }
    for (auto& [rows, v] : sums) v /= order;
    return sums;
}

} // namespace

TEST_CASE("isotypic projection of the regular representation") {
    const auto decomp = project_isotypic(regular_action(3));
    REQUIRE(decomp.components.size() == 3);
    CHECK(decomp.multiplicity_of(YoungDiagram({3})) == 1);
    CHECK(decomp.multiplicity_of(YoungDiagram({2, 1})) == 2);
    CHECK(decomp.multiplicity_of(YoungDiagram({1, 1, 1})) == 1);

    for (int n = 2; n <= 5; ++n) {
        const auto d = project_isotypic(regular_action(n));
        for (const auto& lambda : partitions_of(n))
            CHECK(d.multiplicity_of(lambda) == standard_tableaux_count(lambda));
    }
}

TEST_CASE("trivial one-dimensional action carries only the trivial irrep") {
    PermutationAction action;
    action.degree = 4;
    action.dimension = 1;
    action.generator_maps.assign(3, std::vector<int>{0});
    const auto decomp = project_isotypic(action);
    REQUIRE(decomp.components.size() == 1);
    CHECK(decomp.components[0].lambda == YoungDiagram({4}));
    CHECK(decomp.components[0].multiplicity == 1);
}

TEST_CASE("swap action on two product states splits symmetric/antisymmetric") {
    PermutationAction action;
    action.degree = 2;
    action.dimension = 2;
    action.generator_maps = {{1, 0}};
    const auto decomp = project_isotypic(action);
    CHECK(decomp.multiplicity_of(YoungDiagram({2})) == 1);
    CHECK(decomp.multiplicity_of(YoungDiagram({1, 1})) == 1);
}

TEST_CASE("isotypic multiplicities agree with independent character sums") {
    // natural action, regular action, and a product-state action
    for (int n : {3, 4}) {
        // natural action on n letters
        PermutationAction nat;
        nat.degree = n;
        nat.dimension = n;
        for (int k = 1; k <= n - 1; ++k) {
            std::vector<int> map(n);
            for (int i = 0; i < n; ++i) map[i] = i;
            std::swap(map[k - 1], map[k]);
            nat.generator_maps.push_back(std::move(map));
        }
        const auto expect = multiplicities_by_characters(nat);
        const auto decomp = project_isotypic(nat);
        for (const auto& lambda : partitions_of(n))
            CHECK(decomp.multiplicity_of(lambda) == expect.at(lambda.rows));
    }
    const auto reg = regular_action(4);
    const auto expect = multiplicities_by_characters(reg);
    const auto decomp = project_isotypic(reg);
    for (const auto& lambda : partitions_of(4))
        CHECK(decomp.multiplicity_of(lambda) == expect.at(lambda.rows));
}

TEST_CASE("full isotypic bases are orthonormal and complete") {
    ProjectOptions opts;
    opts.want_full_basis = true;
    const auto decomp = project_isotypic(regular_action(4), opts);
    int total = 0;
    Eigen::MatrixXd resolution = Eigen::MatrixXd::Zero(decomp.dimension, decomp.dimension);
    for (const auto& comp : decomp.components) {
        total += comp.multiplicity * comp.irrep_dim;
        resolution += comp.full_basis * comp.full_basis.transpose();
    }
    CHECK(total == decomp.dimension);
    CHECK((resolution - Eigen::MatrixXd::Identity(decomp.dimension, decomp.dimension))
              .cwiseAbs()
              .maxCoeff() < 1e-10);
}

TEST_CASE("violated relations are reported by name") {
    PermutationAction action;
    action.degree = 3;
    action.dimension = 3;
    action.generator_maps = {{1, 2, 0}, {0, 2, 1}}; // first map is a 3-cycle, not an involution
    CHECK_THROWS_WITH_AS(project_isotypic(action),
                         doctest::Contains("s_1^2 = id"), Error);

    MatrixAction ma;
    ma.degree = 2;
    Eigen::MatrixXd bad(2, 2);
    bad << 1.0, 0.5, 0.5, 1.0; // not orthogonal
    ma.generators = {bad};
    CHECK_THROWS_AS(project_isotypic(ma), Error);
}

TEST_CASE("dense matrix actions agree with the permutation fast path") {
    const auto action = regular_action(3);
    MatrixAction ma;
    ma.degree = 3;
    for (const auto& map : action.generator_maps) {
        Eigen::MatrixXd g = Eigen::MatrixXd::Zero(action.dimension, action.dimension);
        for (int i = 0; i < action.dimension; ++i) g(map[i], i) = 1.0;
        ma.generators.push_back(std::move(g));
    }
    const auto a = project_isotypic(action);
    const auto b = project_isotypic(ma);
    REQUIRE(a.components.size() == b.components.size());
    for (std::size_t i = 0; i < a.components.size(); ++i) {
        CHECK(a.components[i].lambda == b.components[i].lambda);
        CHECK(a.components[i].multiplicity == b.components[i].multiplicity);
    }

    // a genuinely dense orthogonal action: conjugate the regular action by a
    // fixed rotation so no generator stays a permutation matrix
    Eigen::MatrixXd rot = Eigen::MatrixXd::Identity(action.dimension, action.dimension);
    const double th = 0.37;
    rot(0, 0) = std::cos(th);
    rot(0, 1) = -std::sin(th);
    rot(1, 0) = std::sin(th);
    rot(1, 1) = std::cos(th);
    MatrixAction dense;
    dense.degree = 3;
    for (const auto& g : ma.generators) dense.generators.push_back(rot * g * rot.transpose());
    const auto c = project_isotypic(dense);
    for (const auto& lambda : partitions_of(3))
        CHECK(c.multiplicity_of(lambda) == a.multiplicity_of(lambda));
}
