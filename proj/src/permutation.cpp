#include "spectra1d/permutation.hpp"

#include <algorithm>
#include <numeric>

#include "spectra1d/errors.hpp"

namespace spectra1d {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
    const int n = static_cast<int>(images_.size());
    if (n < 1)
        throw Error("group_theory", "permutation degree must be >= 1");
    if (n > kMaxDegree)
        throw Error("group_theory",
                    "permutation degree " + std::to_string(n) + " exceeds the library cap of " +
                        std::to_string(kMaxDegree));
    std::vector<char> seen(n, 0);
    for (int v : images_) {
        if (v < 1 || v > n || seen[v - 1])
            throw Error("group_theory", "one-line notation is not a bijection on {1..n}");
        seen[v - 1] = 1;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> im(n);
    std::iota(im.begin(), im.end(), 1);
    return Permutation(std::move(im));
}

Permutation Permutation::adjacent_transposition(int n, int k) {
    if (k < 1 || k >= n)
        throw Error("group_theory", "adjacent transposition index out of range");
    return transposition(n, k, k + 1);
}

Permutation Permutation::transposition(int n, int i, int j) {
    if (i < 1 || j < 1 || i > n || j > n || i == j)
        throw Error("group_theory", "invalid transposition");
    auto p = identity(n);
    std::swap(p.images_[i - 1], p.images_[j - 1]);
    return p;
}

Permutation Permutation::compose(const Permutation& q) const {
    if (degree() != q.degree())
        throw Error("group_theory", "compose: degree mismatch");
    std::vector<int> im(degree());
    for (int x = 1; x <= degree(); ++x)
        im[x - 1] = images_[q.images_[x - 1] - 1];
    return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
    std::vector<int> im(degree());
    for (int x = 1; x <= degree(); ++x)
        im[images_[x - 1] - 1] = x;
    return Permutation(std::move(im));
}

int Permutation::sign() const {
    auto a = images_;
    int s = 1;
    for (int i = 0; i < static_cast<int>(a.size()); ++i) {
        while (a[i] != i + 1) {
            std::swap(a[i], a[a[i] - 1]);
            s = -s;
        }
    }
    return s;
}

bool Permutation::is_identity() const {
    for (int x = 1; x <= degree(); ++x)
        if (images_[x - 1] != x) return false;
    return true;
}

std::vector<int> Permutation::adjacent_factorization() const {
    // Bubble-sort the one-line form; each recorded swap of positions (k, k+1)
    // right-multiplies by s_k, so p ∘ s_{k_1} ∘ ... ∘ s_{k_m} = e and hence
    // p = s_{k_m} ∘ ... ∘ s_{k_1}.
    auto a = images_;
    std::vector<int> ks;
    const int n = static_cast<int>(a.size());
    bool moved = true;
    while (moved) {
        moved = false;
        for (int k = 0; k + 1 < n; ++k) {
            if (a[k] > a[k + 1]) {
                std::swap(a[k], a[k + 1]);
                ks.push_back(k + 1);
                moved = true;
            }
        }
    }
    std::reverse(ks.begin(), ks.end());
    return ks;
}

Permutation compose(const Permutation& p, const Permutation& q) { return p.compose(q); }

std::vector<Permutation> all_permutations(int n) {
    std::vector<int> im(n);
    std::iota(im.begin(), im.end(), 1);
    std::vector<Permutation> out;
    do {
        out.push_back(Permutation(im));
    } while (std::next_permutation(im.begin(), im.end()));
    return out;
}

PlainChanges::PlainChanges(int n)
    : values_(n), dirs_(n, -1), current_(Permutation::identity(n)) {
    std::iota(values_.begin(), values_.end(), 1);
}

int PlainChanges::next() {
    const int n = static_cast<int>(values_.size());
    int mobile = -1, mpos = -1;
    for (int i = 0; i < n; ++i) {
        const int j = i + dirs_[i];
        if (j < 0 || j >= n) continue;
        if (values_[j] < values_[i] && (mobile < 0 || values_[i] > mobile)) {
            mobile = values_[i];
            mpos = i;
        }
    }
    if (mobile < 0) return 0;
    const int tpos = mpos + dirs_[mpos];
    std::swap(values_[mpos], values_[tpos]);
    std::swap(dirs_[mpos], dirs_[tpos]);
    for (int i = 0; i < n; ++i)
        if (values_[i] > mobile) dirs_[i] = -dirs_[i];
    const int k = std::min(mpos, tpos) + 1;
    current_ = current_.compose(Permutation::adjacent_transposition(n, k));
    return k;
}

} // namespace spectra1d
