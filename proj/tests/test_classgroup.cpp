#include <gtest/gtest.h>

#include <map>
#include <set>

#include "support.hpp"

using namespace k3moduli;
using testing_support::discriminants;

namespace {

std::vector<QuadForm> reps(const ClassGroup& g, const IndexSet& idx)
{
    std::vector<QuadForm> out;
    for (ClassIndex i : idx)
        out.push_back(g[i].rep());
    return out;
}

// Order statistics of Z/n1 x ... x Z/nk: number of elements of each order.
std::map<std::size_t, std::size_t> order_profile(const std::vector<Int>& divisors)
{
    std::map<std::size_t, std::size_t> prof;
    std::vector<Int> digits(divisors.size(), 0);
    for (;;) {
        std::size_t ord = 1;
        for (std::size_t k = 0; k < divisors.size(); ++k) {
            std::size_t o = static_cast<std::size_t>(divisors[k] / std::gcd(divisors[k], digits[k]));
            ord = std::lcm(ord, o);
        }
        ++prof[ord];
        std::size_t k = 0;
        while (k < digits.size() && ++digits[k] == divisors[k])
            digits[k++] = 0;
        if (k == digits.size())
            break;
    }
    return prof;
}

std::map<std::size_t, std::size_t> order_profile(const ClassGroup& g)
{
    std::map<std::size_t, std::size_t> prof;
    for (ClassIndex i = 0; i < g.size(); ++i)
        ++prof[g.element_order(i)];
    return prof;
}

} // namespace

TEST(Enumerate, MinusTwentyThree)
{
    ClassGroup g = enumerate(-23);
    ASSERT_EQ(g.size(), 3u);
    std::set<QuadForm> got;
    for (const auto& c : g.classes())
        got.insert(c.rep());
    EXPECT_EQ(got, (std::set<QuadForm>{{1, 1, 6}, {2, 1, 3}, {2, -1, 3}}));
    EXPECT_EQ(g[g.identity()].rep(), (QuadForm{1, 1, 6}));
}

TEST(Enumerate, SmallClassNumbers)
{
    EXPECT_EQ(class_number(-3), 1);
    EXPECT_EQ(class_number(-4), 1);
    EXPECT_EQ(class_number(-15), 2);
    EXPECT_EQ(class_number(-56), 4);
    EXPECT_EQ(class_number(-60), 2);
    EXPECT_EQ(class_number(-92), 3);
    EXPECT_EQ(class_number(-163), 1);
    EXPECT_EQ(class_number(-3299), 27);
}

TEST(Enumerate, Errors)
{
    EXPECT_THROW(enumerate(-5), BadDiscriminant);
    EXPECT_THROW(enumerate(0), BadDiscriminant);
    EXPECT_THROW(enumerate(12), BadDiscriminant);
}

TEST(Enumerate, ClassNumberFormulaOracle)
{
    for (Int d : discriminants(2000))
        ASSERT_EQ(class_number(d), testing_support::class_number_formula(d)) << "D=" << d;
}

TEST(Enumerate, OnlyPrimitiveReducedForms)
{
    for (Int d : discriminants(800)) {
        // independent scan: every triple with |b| <= a <= c
        std::set<QuadForm> brute;
        for (Int a = 1; a * a <= -d; ++a)
            for (Int b = -a; b <= a; ++b) {
                if ((b * b - d) % (4 * a) != 0)
                    continue;
                Int c = (b * b - d) / (4 * a);
                QuadForm q{a, b, c};
                if (c >= a && is_reduced(q) && is_primitive(q))
                    brute.insert(q);
            }
        std::set<QuadForm> got;
        for (const auto& c : reduced_forms(d))
            got.insert(c.rep());
        ASSERT_EQ(got, brute) << "D=" << d;
    }
}

TEST(TwoTorsion, Examples)
{
    ClassGroup g56 = enumerate(-56);
    EXPECT_EQ(reps(g56, two_torsion(g56)), (std::vector<QuadForm>{{1, 0, 14}, {2, 0, 7}}));
    ClassGroup g23 = enumerate(-23);
    EXPECT_EQ(two_torsion(g23).size(), 1u);
}

TEST(TwoTorsion, EqualsAmbiguousForms)
{
    for (Int d : discriminants(2000)) {
        ClassGroup g = enumerate(d);
        IndexSet amb;
        for (ClassIndex i = 0; i < g.size(); ++i) {
            const QuadForm& q = g[i].rep();
            if (q.b == 0 || q.a == q.b || q.a == q.c)
                amb.push_back(i);
        }
        ASSERT_EQ(two_torsion(g), amb) << "D=" << d;
    }
}

TEST(Genus, MinusFiftySix)
{
    ClassGroup g = enumerate(-56);
    EXPECT_EQ(reps(g, principal_genus(g)), (std::vector<QuadForm>{{1, 0, 14}, {2, 0, 7}}));
    EXPECT_EQ(reps(g, genus_of(g, class_of(3, 2, 5))), (std::vector<QuadForm>{{3, 2, 5}, {3, -2, 5}}));
    EXPECT_EQ(genus_order(g), 2);
    GenusPartition p = genus_partition(g);
    EXPECT_EQ(p.cosets.size(), 2u);
}

TEST(Genus, MinusTwentyThree)
{
    ClassGroup g = enumerate(-23);
    EXPECT_EQ(principal_genus(g).size(), 3u);
    EXPECT_EQ(genus_partition(g).cosets.size(), 1u);
    EXPECT_EQ(genus_order(g), 3);
}

TEST(Genus, ClassNotInGroup)
{
    ClassGroup g = enumerate(-23);
    EXPECT_THROW(genus_of(g, class_of(1, 0, 14)), ClassNotInGroup);
    EXPECT_THROW(g.require_index(class_of(3, 2, 5)), ClassNotInGroup);
}

TEST(Genus, ExactSequence)
{
    for (Int d : discriminants(2000)) {
        ClassGroup g = enumerate(d);
        const std::size_t sq = principal_genus(g).size(), tw = two_torsion(g).size();
        ASSERT_EQ(g.size(), sq * tw) << "D=" << d;
        GenusPartition p = genus_partition(g);
        ASSERT_EQ(p.cosets.size(), tw) << "D=" << d;
        std::size_t covered = 0;
        for (const auto& c : p.cosets) {
            EXPECT_EQ(c.size(), sq);
            covered += c.size();
        }
        EXPECT_EQ(covered, g.size());
    }
}

TEST(Genus, SameGenusIffQuotientInPrincipalGenus)
{
    for (Int d : discriminants(700)) {
        ClassGroup g = enumerate(d);
        IndexSet pg = principal_genus(g);
        for (ClassIndex x = 0; x < g.size(); ++x) {
            IndexSet gx = genus_of(g, g[x]);
            for (ClassIndex y = 0; y < g.size(); ++y) {
                bool same = gx == genus_of(g, g[y]);
                bool quotient = std::binary_search(pg.begin(), pg.end(), g.op(x, g.inverse(y)));
                ASSERT_EQ(same, quotient);
            }
        }
    }
}

TEST(Genus, InverseInSameGenus)
{
    for (Int d : discriminants(2000)) {
        ClassGroup g = enumerate(d);
        IndexSet pg = principal_genus(g);
        for (ClassIndex x = 0; x < g.size(); ++x) {
            // x and x^-1 share a genus iff x^2 lies in C^2, which always holds
            ASSERT_TRUE(std::binary_search(pg.begin(), pg.end(), g.op(x, x)));
            ASSERT_EQ(coset(g, x, pg), coset(g, g.inverse(x), pg)) << "D=" << d;
        }
    }
}

TEST(Cayley, LatinSquare)
{
    for (Int d : discriminants(1000)) {
        ClassGroup g = enumerate(d);
        auto t = g.cayley();
        const std::size_t h = g.size();
        for (std::size_t i = 0; i < h; ++i) {
            std::vector<bool> row(h, false), col(h, false);
            for (std::size_t k = 0; k < h; ++k) {
                row[t[i][k]] = true;
                col[t[k][i]] = true;
            }
            ASSERT_EQ(std::count(row.begin(), row.end(), true), static_cast<long>(h));
            ASSERT_EQ(std::count(col.begin(), col.end(), true), static_cast<long>(h));
        }
    }
}

TEST(Cayley, InverseAndPower)
{
    ClassGroup g = enumerate(-23);
    ClassIndex x = *g.index_of(class_of(2, 1, 3));
    EXPECT_EQ(g.element_order(x), 3u);
    EXPECT_EQ(g.power(x, 3), g.identity());
    EXPECT_EQ(g.power(x, -1), g.inverse(x));
    EXPECT_EQ(g[g.inverse(x)].rep(), (QuadForm{2, -1, 3}));
}

TEST(Structure, Examples)
{
    EXPECT_EQ(structure(enumerate(-23)), (std::vector<Int>{3}));
    EXPECT_EQ(structure(enumerate(-56)), (std::vector<Int>{4}));
    EXPECT_EQ(structure(enumerate(-4)), (std::vector<Int>{}));
    EXPECT_EQ(structure(enumerate(-84)), (std::vector<Int>{2, 2}));
    EXPECT_EQ(structure(enumerate(-3299)), (std::vector<Int>{3, 9}));
}

TEST(Structure, MatchesOrderProfile)
{
    // the elementary divisors determine the group; compare order statistics
    for (Int d : discriminants(2000)) {
        ClassGroup g = enumerate(d);
        std::vector<Int> ed = structure(g);
        Int prod = 1;
        for (std::size_t k = 0; k < ed.size(); ++k) {
            prod *= ed[k];
            if (k > 0) {
                ASSERT_EQ(ed[k] % ed[k - 1], 0);
            }
        }
        ASSERT_EQ(prod, static_cast<Int>(g.size()));
        ASSERT_EQ(order_profile(g), order_profile(ed)) << "D=" << d;
    }
    ClassGroup g = enumerate(-3299);
    EXPECT_EQ(order_profile(g), order_profile(std::vector<Int>{3, 9}));
    EXPECT_NE(order_profile(g), order_profile(std::vector<Int>{27}));
}
