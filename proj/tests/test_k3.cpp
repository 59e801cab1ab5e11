#include <gtest/gtest.h>

#include <set>

#include "support.hpp"

using namespace k3moduli;
using testing_support::discriminants;
using testing_support::Rng;

namespace {

Gram gram(Int a, Int b, Int c) { return {{{2 * a, b}, {b, 2 * c}}}; }

std::set<std::pair<Int, QuadForm>> as_set(const std::vector<TranscLattice>& v)
{
    std::set<std::pair<Int, QuadForm>> s;
    for (const auto& t : v)
        s.insert({t.m(), t.q0().rep()});
    return s;
}

} // namespace

TEST(TranscLattice, FromGram)
{
    TranscLattice t = TranscLattice::from_gram(gram(1, 1, 6));
    EXPECT_EQ(t.m(), 1);
    EXPECT_EQ(t.q0().rep(), (QuadForm{1, 1, 6}));
    EXPECT_EQ(t.disc(), -23);

    TranscLattice s = TranscLattice::from_gram({{{4, 2}, {2, 24}}});
    EXPECT_EQ(s.m(), 2);
    EXPECT_EQ(s.q0().rep(), (QuadForm{1, 1, 6}));
    EXPECT_EQ(s.disc(), -92);
    EXPECT_EQ(s.disc0(), -23);

    TranscLattice u = TranscLattice::from_gram({{{6, 2}, {2, 10}}});
    EXPECT_EQ(u.q0().rep(), (QuadForm{3, 2, 5}));
    EXPECT_EQ(u.disc(), -56);
}

TEST(TranscLattice, Errors)
{
    EXPECT_THROW(TranscLattice::from_gram({{{3, 1}, {1, 12}}}), NotEven);
    EXPECT_THROW(TranscLattice::from_gram({{{2, 1}, {0, 12}}}), NotSymmetric);
    EXPECT_THROW(TranscLattice::from_gram({{{2, 3}, {3, 2}}}), NotPositiveDefinite);
    EXPECT_THROW(TranscLattice::from_gram({{{-2, 0}, {0, -2}}}), NotPositiveDefinite);
}

TEST(TranscLattice, IsometryIffInvariantsAgree)
{
    // an SL2 change of basis gives an isometric lattice with equal invariants
    Rng rng(7);
    for (Int d : discriminants(300))
        for (const auto& c : reduced_forms(d))
            for (Int m = 1; m <= 3; ++m) {
                QuadForm moved = apply(c.rep(), testing_support::random_sl2(rng, 4));
                TranscLattice x = TranscLattice::from_gram(gram(m * c.a(), m * c.b(), m * c.c()));
                TranscLattice y = TranscLattice::from_gram(gram(m * moved.a, m * moved.b, m * moved.c));
                EXPECT_EQ(x, y);
                EXPECT_EQ(x.disc(), y.disc());
            }
    // distinct classes or scalings are never identified
    auto t1 = TranscLattice::from_gram(gram(2, 1, 3));
    auto t2 = TranscLattice::from_gram(gram(2, -1, 3));
    auto t3 = TranscLattice::from_gram(gram(4, 2, 6));
    EXPECT_NE(t1, t2);
    EXPECT_NE(t1, t3);
}

TEST(CmField, Examples)
{
    EXPECT_EQ(cm_field(TranscLattice::from_gram(gram(1, 1, 6))), -23);
    EXPECT_EQ(cm_field(TranscLattice::from_gram(gram(2, 2, 12))), -23);
    EXPECT_EQ(cm_field(TranscLattice::from_gram(gram(3, 2, 5))), -56);
    EXPECT_EQ(cm_field(TranscLattice::from_gram(gram(1, 0, 1))), -4);
    EXPECT_EQ(cm_field(TranscLattice::from_gram(gram(1, 0, 4))), -4);
}

TEST(CmField, ScalingInvariant)
{
    for (Int d : discriminants(500))
        for (const auto& c : reduced_forms(d))
            for (Int m : {1, 2, 3, 6}) {
                TranscLattice t = TranscLattice::scaled(m, c);
                ASSERT_EQ(cm_field(t), cm_field(TranscLattice::scaled(1, c)));
            }
}

TEST(ShiodaMitani, Examples)
{
    auto sm = shioda_mitani(TranscLattice::from_gram(gram(2, 2, 12)));
    EXPECT_EQ(sm.q1.rep(), (QuadForm{1, 1, 6}));
    EXPECT_EQ(sm.q2.rep(), (QuadForm{1, 0, 23}));
    EXPECT_EQ(sm.tau.a, 1);
    EXPECT_EQ(sm.tau.D, -23);
}

TEST(ShiodaMitani, ComposesToPrimitivePart)
{
    for (Int d : discriminants(600))
        for (const auto& c : reduced_forms(d))
            for (Int m : {1, 2, 3, 4}) {
                auto sm = shioda_mitani(TranscLattice::scaled(m, c));
                ASSERT_EQ(sm.q2.disc(), m * m * d);
                ASSERT_EQ(compose_general(sm.q1, sm.q2), c);
            }
}

TEST(Conjugate, Examples)
{
    TranscLattice t = TranscLattice::from_gram(gram(1, 1, 6));
    // g = (2,1,3): g^-2 = (2,1,3)
    EXPECT_EQ(conjugate_lattice(t, class_of(2, 1, 3)).q0().rep(), (QuadForm{2, 1, 3}));
    EXPECT_EQ(conjugate_lattice(t, class_of(2, -1, 3)).q0().rep(), (QuadForm{2, -1, 3}));
    EXPECT_EQ(complex_conjugate(TranscLattice::from_gram(gram(2, 1, 3))).q0().rep(), (QuadForm{2, -1, 3}));
    EXPECT_THROW(conjugate_lattice(t, class_of(1, 0, 14)), DiscriminantMismatch);
}

TEST(Conjugate, ThenComplexConjugate)
{
    for (Int d : discriminants(500)) {
        ClassGroup g = enumerate(d);
        for (const auto& q0 : g.classes())
            for (const auto& x : g.classes()) {
                TranscLattice t = TranscLattice::scaled(2, q0);
                TranscLattice lhs = complex_conjugate(conjugate_lattice(t, x));
                TranscLattice rhs = TranscLattice::scaled(2, compose(compose(x, x), inverse(q0)));
                ASSERT_EQ(lhs, rhs);
            }
    }
}

TEST(Orbit, Examples)
{
    auto orbit = galois_orbit(TranscLattice::from_gram(gram(1, 1, 6)));
    EXPECT_EQ(as_set(orbit), (std::set<std::pair<Int, QuadForm>>{{1, {1, 1, 6}}, {1, {2, 1, 3}}, {1, {2, -1, 3}}}));
    auto o56 = galois_orbit(TranscLattice::from_gram(gram(3, 2, 5)));
    EXPECT_EQ(as_set(o56), (std::set<std::pair<Int, QuadForm>>{{1, {3, 2, 5}}, {1, {3, -2, 5}}}));
    auto o_scaled = galois_orbit(TranscLattice::from_gram(gram(9, 6, 15)));
    EXPECT_EQ(as_set(o_scaled), (std::set<std::pair<Int, QuadForm>>{{3, {3, 2, 5}}, {3, {3, -2, 5}}}));
}

TEST(Orbit, EqualsConjugateSet)
{
    for (Int d : discriminants(700)) {
        ClassGroup g = enumerate(d);
        for (const auto& q0 : g.classes()) {
            TranscLattice t = TranscLattice::scaled(1, q0);
            std::vector<TranscLattice> conj;
            for (const auto& x : g.classes())
                conj.push_back(conjugate_lattice(t, x));
            ASSERT_EQ(as_set(conj), as_set(galois_orbit(t, g))) << "D=" << d;
            ASSERT_EQ(galois_orbit(t, g).size(), static_cast<std::size_t>(genus_order(g)));
        }
    }
}
