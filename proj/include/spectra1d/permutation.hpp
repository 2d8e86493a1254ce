#pragma once

#include <compare>
#include <vector>

namespace spectra1d {

// Library-wide particle-number ceiling. Everything involving S_N works at
// desk scale; N! growth makes larger degrees pointless here.
inline constexpr int kMaxDegree = 8;

// Element of S_n in one-line notation: images[i-1] = image of i, values 1..n.
class Permutation {
public:
    explicit Permutation(std::vector<int> images);

    static Permutation identity(int n);
    // (k, k+1), 1 <= k <= n-1
    static Permutation adjacent_transposition(int n, int k);
    // (i, j), i != j
    static Permutation transposition(int n, int i, int j);

    int degree() const { return static_cast<int>(images_.size()); }
    int operator()(int x) const { return images_[x - 1]; }
    const std::vector<int>& images() const { return images_; }

    // r = this∘q applies q first: r(x) = this(q(x)).
    Permutation compose(const Permutation& q) const;
    Permutation inverse() const;
    int sign() const;
    bool is_identity() const;

    // Minimal factorisation data: positions k such that
    // p = s_{k_m} ∘ ... ∘ s_{k_1} with s_k = (k, k+1).
    std::vector<int> adjacent_factorization() const;

    auto operator<=>(const Permutation&) const = default;

private:
    std::vector<int> images_;
};

Permutation compose(const Permutation& p, const Permutation& q);

// All n! elements in lexicographic order of one-line notation.
std::vector<Permutation> all_permutations(int n);

// Steinhaus-Johnson-Trotter "plain changes" walk through S_n: successive
// permutations differ by one adjacent transposition applied on the right,
// p_{t+1} = p_t ∘ s_k.  Yields n!-1 swap positions after the identity.
class PlainChanges {
public:
    explicit PlainChanges(int n);
    const Permutation& current() const { return current_; }
    // Advance; returns the swapped position k (1-based) or 0 when exhausted.
    int next();

private:
    std::vector<int> values_;
    std::vector<int> dirs_;
    Permutation current_;
};

} // namespace spectra1d
