#pragma once

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace switchsim {

/// Permutation of the channel labels {1..N}, one-line notation:
/// image_of(a) is the label placed at slot a of the composition order.
class Permutation {
public:
    explicit Permutation(std::vector<int> images) : images_(std::move(images)) {
        if (images_.empty()) throw std::invalid_argument("Permutation: empty image list");
        std::vector<int> sorted = images_;
        std::sort(sorted.begin(), sorted.end());
        for (int a = 0; a < size(); ++a)
            if (sorted[a] != a + 1)
                throw std::invalid_argument("Permutation: images are not a bijection on 1..N");
    }

    static Permutation identity(int n) {
        std::vector<int> v(n);
        std::iota(v.begin(), v.end(), 1);
        return Permutation(std::move(v));
    }

    /// Rotation by k slots: slot a holds label ((a-1+k) mod N)+1.
    static Permutation rotation(int n, int k) {
        std::vector<int> v(n);
        const int shift = ((k % n) + n) % n;
        for (int a = 0; a < n; ++a) v[a] = (a + shift) % n + 1;
        return Permutation(std::move(v));
    }

    int size() const { return static_cast<int>(images_.size()); }

    /// 1-indexed application: label at slot a.
    int image_of(int a) const {
        if (a < 1 || a > size()) throw std::out_of_range("Permutation: position out of range");
        return images_[a - 1];
    }

    const std::vector<int>& images() const { return images_; }

    bool operator==(const Permutation& o) const { return images_ == o.images_; }
    bool operator!=(const Permutation& o) const { return images_ != o.images_; }
    bool operator<(const Permutation& o) const { return images_ < o.images_; }

    std::string to_string() const {
        std::ostringstream os;
        os << '(';
        for (int a = 0; a < size(); ++a) {
            if (a) os << ' ';
            os << images_[a];
        }
        os << ')';
        return os.str();
    }

private:
    std::vector<int> images_;
};

/// r = p after q: r(a) = p(q(a)).
inline Permutation compose(const Permutation& p, const Permutation& q) {
    if (p.size() != q.size()) throw std::invalid_argument("compose: size mismatch");
    std::vector<int> v(p.size());
    for (int a = 1; a <= p.size(); ++a) v[a - 1] = p.image_of(q.image_of(a));
    return Permutation(std::move(v));
}

inline Permutation inverse(const Permutation& p) {
    std::vector<int> v(p.size());
    for (int a = 1; a <= p.size(); ++a) v[p.image_of(a) - 1] = a;
    return Permutation(std::move(v));
}

/// All N! permutations in lexicographic order of their image lists.
inline std::vector<Permutation> all_permutations(int n) {
    if (n < 1) throw std::invalid_argument("all_permutations: N must be >= 1");
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    std::vector<Permutation> out;
    do {
        out.emplace_back(v);
    } while (std::next_permutation(v.begin(), v.end()));
    return out;
}

/// The N rotations of (1,...,N), identity first.
inline std::vector<Permutation> cyclic_permutations(int n) {
    std::vector<Permutation> out;
    out.reserve(n);
    for (int k = 0; k < n; ++k) out.push_back(Permutation::rotation(n, k));
    return out;
}

/// Permutation of the extended label set {0,1,...,N}, 0-indexed positions.
class ExtendedPermutation {
public:
    explicit ExtendedPermutation(std::vector<int> images) : images_(std::move(images)) {
        if (images_.empty())
            throw std::invalid_argument("ExtendedPermutation: empty image list");
        std::vector<int> sorted = images_;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t x = 0; x < images_.size(); ++x)
            if (sorted[x] != static_cast<int>(x))
                throw std::invalid_argument(
                    "ExtendedPermutation: images are not a bijection on 0..N");
    }

    static ExtendedPermutation identity(int ground_size) {
        std::vector<int> v(ground_size);
        std::iota(v.begin(), v.end(), 0);
        return ExtendedPermutation(std::move(v));
    }

    int ground_size() const { return static_cast<int>(images_.size()); }

    int image_of(int x) const {
        if (x < 0 || x >= ground_size())
            throw std::out_of_range("ExtendedPermutation: element out of range");
        return images_[x];
    }

    const std::vector<int>& images() const { return images_; }

    bool operator==(const ExtendedPermutation& o) const { return images_ == o.images_; }

private:
    std::vector<int> images_;
};

/*
 * The pair permutation of (pi, pi') on {0..N}: the composition of
 *   first   0 -> pi(1),  pi(a) -> pi(a+1) for a < N,   pi(N) -> 0
 *   then    0 -> pi'(N), pi'(a) -> pi'(a-1) for a > 1, pi'(1) -> 0.
 *
 * On interior slots this realises x = pi(a) |-> pi'(pi'^{-1}(pi(a+1)) - 1);
 * composing the two full (N+1)-cycles covers the wrap-around slots with no
 * special cases. Its cycle structure classifies and normalises the switch
 * interference term attached to the orders (pi, pi').
 */
inline ExtendedPermutation build_c_pair(const Permutation& pi, const Permutation& pi_prime) {
    if (pi.size() != pi_prime.size()) throw std::invalid_argument("build_c_pair: size mismatch");
    const int n = pi.size();

    std::vector<int> first(n + 1);
    first[0] = pi.image_of(1);
    for (int a = 1; a < n; ++a) first[pi.image_of(a)] = pi.image_of(a + 1);
    first[pi.image_of(n)] = 0;

    std::vector<int> second(n + 1);
    second[0] = pi_prime.image_of(n);
    for (int a = 2; a <= n; ++a) second[pi_prime.image_of(a)] = pi_prime.image_of(a - 1);
    second[pi_prime.image_of(1)] = 0;

    std::vector<int> images(n + 1);
    for (int x = 0; x <= n; ++x) images[x] = second[first[x]];
    return ExtendedPermutation(std::move(images));
}

/// Disjoint-cycle form. Each cycle is listed from its smallest element and
/// cycles are ordered by smallest element; fixed points appear as singletons.
class CycleDecomposition {
public:
    explicit CycleDecomposition(const ExtendedPermutation& source)
        : cycle_of_(source.ground_size(), -1) {
        const int n = source.ground_size();
        for (int start = 0; start < n; ++start) {
            if (cycle_of_[start] >= 0) continue;
            std::vector<int> cycle;
            int x = start;
            while (cycle_of_[x] < 0) {
                cycle_of_[x] = static_cast<int>(cycles_.size());
                cycle.push_back(x);
                x = source.image_of(x);
            }
            cycles_.push_back(std::move(cycle));
        }
    }

    const std::vector<std::vector<int>>& cycles() const { return cycles_; }
    int cycle_count() const { return static_cast<int>(cycles_.size()); }
    int ground_size() const { return static_cast<int>(cycle_of_.size()); }

    bool same_cycle(int a, int b) const {
        if (a < 0 || b < 0 || a >= ground_size() || b >= ground_size())
            throw std::out_of_range("same_cycle: element out of range");
        return cycle_of_[a] == cycle_of_[b];
    }

    /// Reapply the cycles; inverse of decomposition.
    ExtendedPermutation to_permutation() const {
        std::vector<int> images(ground_size());
        for (const auto& cycle : cycles_)
            for (std::size_t i = 0; i < cycle.size(); ++i)
                images[cycle[i]] = cycle[(i + 1) % cycle.size()];
        return ExtendedPermutation(std::move(images));
    }

private:
    std::vector<std::vector<int>> cycles_;
    std::vector<int> cycle_of_;
};

inline CycleDecomposition cycle_decomposition(const ExtendedPermutation& e) {
    return CycleDecomposition(e);
}

inline bool same_cycle(const CycleDecomposition& c, int a, int b) { return c.same_cycle(a, b); }

/// True when one composition order is a proper cyclic rotation of the other,
/// i.e. inverse(pi) o pi' is a rotation by k != 0 (mod N). Pairs of this kind
/// carry the maximal interference weight 1/d^2. For N = 1 the only pair is
/// mutually cyclic by convention.
inline bool is_mutually_cyclic(const Permutation& pi, const Permutation& pi_prime) {
    if (pi.size() != pi_prime.size())
        throw std::invalid_argument("is_mutually_cyclic: size mismatch");
    const int n = pi.size();
    const Permutation delta = compose(inverse(pi), pi_prime);
    const int shift = delta.image_of(1) - 1;
    for (int a = 1; a <= n; ++a)
        if (delta.image_of(a) != (a - 1 + shift) % n + 1) return false;
    return n == 1 || shift != 0;
}

}  // namespace switchsim
