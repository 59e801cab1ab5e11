#ifndef K3MODULI_CLASSGROUP_HPP
#define K3MODULI_CLASSGROUP_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "qforms.hpp"

namespace k3moduli {

using ClassIndex = std::size_t;
using IndexSet = std::vector<ClassIndex>; // sorted, no duplicates

/// C(D) with a full composition table. Index 0 is always the principal class.
class ClassGroup {
public:
    ClassGroup(Int disc, std::vector<FormClass> classes) : disc_(disc), classes_(std::move(classes))
    {
        const std::size_t h = classes_.size();
        for (ClassIndex i = 0; i < h; ++i)
            index_.emplace(key(classes_[i]), i);
        cayley_.resize(h * h);
        for (ClassIndex i = 0; i < h; ++i) {
            for (ClassIndex j = i; j < h; ++j) {
                ClassIndex k = index_.at(key(compose(classes_[i], classes_[j])));
                cayley_[i * h + j] = k;
                cayley_[j * h + i] = k;
            }
        }
        inverse_.resize(h);
        for (ClassIndex i = 0; i < h; ++i)
            inverse_[i] = index_.at(key(k3moduli::inverse(classes_[i])));
    }

    Int disc() const { return disc_; }
    std::size_t size() const { return classes_.size(); }
    const std::vector<FormClass>& classes() const { return classes_; }
    const FormClass& operator[](ClassIndex i) const { return classes_.at(i); }

    ClassIndex identity() const { return 0; }
    ClassIndex op(ClassIndex i, ClassIndex j) const { return cayley_[i * size() + j]; }
    ClassIndex inverse(ClassIndex i) const { return inverse_[i]; }

    ClassIndex power(ClassIndex i, long long n) const
    {
        if (n < 0)
            return power(inverse(i), -n);
        ClassIndex r = identity();
        for (long long k = 0; k < n; ++k)
            r = op(r, i);
        return r;
    }

    std::optional<ClassIndex> index_of(const FormClass& c) const
    {
        auto it = index_.find(key(c));
        if (it == index_.end())
            return std::nullopt;
        return it->second;
    }

    ClassIndex require_index(const FormClass& c) const
    {
        auto idx = index_of(c);
        if (!idx || c.disc() != disc_)
            throw ClassNotInGroup(to_string(c.rep()) + " not in C(" + std::to_string(disc_) + ")");
        return *idx;
    }

    std::size_t element_order(ClassIndex i) const
    {
        std::size_t n = 1;
        for (ClassIndex x = i; x != identity(); x = op(x, i))
            ++n;
        return n;
    }

    /// Row-major h x h table of class indices.
    std::vector<std::vector<ClassIndex>> cayley() const
    {
        std::vector<std::vector<ClassIndex>> t(size(), std::vector<ClassIndex>(size()));
        for (ClassIndex i = 0; i < size(); ++i)
            for (ClassIndex j = 0; j < size(); ++j)
                t[i][j] = op(i, j);
        return t;
    }

    std::vector<Int> elementary_divisors() const;

private:
    static std::tuple<Int, Int, Int> key(const FormClass& c) { return {c.a(), c.b(), c.c()}; }

    Int disc_;
    std::vector<FormClass> classes_;
    std::map<std::tuple<Int, Int, Int>, ClassIndex> index_;
    std::vector<ClassIndex> cayley_;
    std::vector<ClassIndex> inverse_;
};

/// All reduced primitive forms of discriminant `disc`, in listing order.
inline std::vector<FormClass> reduced_forms(Int disc)
{
    if (!arith::is_valid_negative_disc(disc))
        throw BadDiscriminant(std::to_string(disc));
    std::vector<FormClass> out;
    const Int absd = -disc;
    for (Int a = 1; 3 * a * a <= absd; ++a) {
        for (Int b = -a + 1; b <= a; ++b) {
            if (arith::mod(b - disc, 2) != 0)
                continue;
            Wide num = static_cast<Wide>(b) * b - disc;
            if (num % (4 * a) != 0)
                continue;
            Int c = arith::narrow(num / (4 * a));
            if (c < a || (c == a && b < 0))
                continue;
            if (arith::gcd(a, b, c) != 1)
                continue;
            out.push_back(FormClass::from_reduced({a, b, c}));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline ClassGroup enumerate(Int disc) { return ClassGroup(disc, reduced_forms(disc)); }

inline Int class_number(Int disc) { return static_cast<Int>(reduced_forms(disc).size()); }

inline IndexSet two_torsion(const ClassGroup& g)
{
    IndexSet out;
    for (ClassIndex i = 0; i < g.size(); ++i)
        if (g.op(i, i) == g.identity())
            out.push_back(i);
    return out;
}

/// C(D)^2, the principal genus.
inline IndexSet principal_genus(const ClassGroup& g)
{
    std::set<ClassIndex> sq;
    for (ClassIndex i = 0; i < g.size(); ++i)
        sq.insert(g.op(i, i));
    return {sq.begin(), sq.end()};
}

/// The coset x * C(D)^2 of class index x.
inline IndexSet coset(const ClassGroup& g, ClassIndex x, const IndexSet& subgroup)
{
    std::set<ClassIndex> s;
    for (ClassIndex y : subgroup)
        s.insert(g.op(x, y));
    return {s.begin(), s.end()};
}

struct GenusPartition {
    IndexSet principal_genus;
    std::vector<IndexSet> cosets; ///< ordered by smallest member; cosets[0] is the principal genus
};

inline GenusPartition genus_partition(const ClassGroup& g)
{
    GenusPartition p{principal_genus(g), {}};
    std::vector<bool> seen(g.size(), false);
    for (ClassIndex i = 0; i < g.size(); ++i) {
        if (seen[i])
            continue;
        IndexSet c = coset(g, i, p.principal_genus);
        for (ClassIndex j : c)
            seen[j] = true;
        p.cosets.push_back(std::move(c));
    }
    return p;
}

inline IndexSet genus_of(const ClassGroup& g, const FormClass& cls)
{
    return coset(g, g.require_index(cls), principal_genus(g));
}

/// Order of the genus, h / |C[2]|.
inline Int genus_order(const ClassGroup& g) { return static_cast<Int>(principal_genus(g).size()); }

inline std::vector<Int> ClassGroup::elementary_divisors() const
{
    const std::size_t h = size();
    std::vector<std::size_t> orders(h);
    for (ClassIndex i = 0; i < h; ++i)
        orders[i] = element_order(i);

    // per prime, exponents of the cyclic factors (descending), read off from
    // the counts of elements killed by p^k
    std::vector<std::pair<Int, std::vector<int>>> primary;
    for (Int p : arith::prime_factors(static_cast<Int>(h))) {
        std::vector<int> ranks; // ranks[k-1] = number of factors with exponent >= k
        std::size_t prev = 1;
        for (Int pk = p;; pk *= p) {
            std::size_t n = static_cast<std::size_t>(
                std::count_if(orders.begin(), orders.end(), [&](std::size_t o) { return pk % static_cast<Int>(o) == 0; }));
            if (n == prev)
                break;
            int r = 0;
            for (std::size_t q = n / prev; q > 1; q /= static_cast<std::size_t>(p))
                ++r;
            ranks.push_back(r);
            prev = n;
        }
        std::vector<int> exps; // descending exponents
        for (int idx = 0; idx < static_cast<int>(ranks.size()); ++idx) {
            int exactly = ranks[idx] - (idx + 1 < static_cast<int>(ranks.size()) ? ranks[idx + 1] : 0);
            for (int k = 0; k < exactly; ++k)
                exps.push_back(idx + 1);
        }
        std::sort(exps.rbegin(), exps.rend());
        primary.emplace_back(p, std::move(exps));
    }

    std::size_t t = 0;
    for (auto& [p, e] : primary)
        t = std::max(t, e.size());
    std::vector<Int> divisors(t, 1);
    for (auto& [p, e] : primary) {
        for (std::size_t k = 0; k < e.size(); ++k) {
            Int pe = 1;
            for (int z = 0; z < e[k]; ++z)
                pe *= p;
            divisors[t - 1 - k] *= pe;
        }
    }
    return divisors;
}

inline std::vector<Int> structure(const ClassGroup& g) { return g.elementary_divisors(); }

} // namespace k3moduli

#endif
