#include <random>

#include "doctest.h"
#include "fpcert/interval.hpp"
#include "fpcert/multi_index.hpp"
#include "fpcert/polynomial.hpp"
#include "fpcert/rational.hpp"
#include "fpcert/rational_function.hpp"

using namespace fpcert;

namespace {

using PolyQ = Polynomial<Rational>;

PolyQ from_terms(std::size_t nvars, std::initializer_list<std::pair<MultiIndex, long>> terms) {
    PolyQ p(nvars);
    for (const auto& [m, c] : terms) p.add_term(m, Rational(c));
    return p;
}

// seeded generator shared by the property suites
std::mt19937& rng() {
    static std::mt19937 gen(20240811u);
    return gen;
}

PolyQ random_poly(std::size_t nvars, uint32_t max_deg) {
    std::uniform_int_distribution<int> coef(-10, 10);
    std::uniform_int_distribution<int> nterm(1, 8);
    std::uniform_int_distribution<uint32_t> ed(0, max_deg);
    PolyQ p(nvars);
    int k = nterm(rng());
    for (int t = 0; t < k; ++t) {
        MultiIndex m(nvars);
        for (std::size_t i = 0; i < nvars; ++i) m[i] = ed(rng());
        if (m.total() > max_deg) continue;
        p.add_term(m, Rational(coef(rng())));
    }
    return p;
}

std::vector<Rational> random_point(std::size_t nvars, int den = 7) {
    std::uniform_int_distribution<int> num(-3 * den, 3 * den);
    std::vector<Rational> pt;
    for (std::size_t i = 0; i < nvars; ++i) pt.push_back(frac(num(rng()), den));
    return pt;
}

}  // namespace

TEST_CASE("rational literal parsing is exact") {
    CHECK(rational_from_decimal("0.6") == Rational(3, 5));
    CHECK(rational_from_decimal("331.") == Rational(331));
    CHECK(rational_from_decimal("42.7e-7") == Rational(427, 100000000));
    CHECK(rational_from_decimal("3.5e7") == Rational(35000000));
    CHECK(rational_from_decimal("6.36") == Rational(159, 25));
    CHECK_THROWS(rational_from_decimal("1.2.3"));
}

TEST_CASE("binary64 representability") {
    CHECK(is_representable_double(Rational(1, 2)));
    CHECK(is_representable_double(Rational(5, 128)));  // 0.0390625
    CHECK(is_representable_double(Rational(35000000)));
    CHECK(!is_representable_double(Rational(3, 5)));
    CHECK(!is_representable_double(Rational(100, 111)));
    CHECK(!is_representable_double(rational_from_decimal("0.954929658551372")));
}

TEST_CASE("directed double conversion brackets the rational") {
    for (auto r : {Rational(3, 5), Rational(-100, 111), Rational(1, 3), Rational(22, 7)}) {
        double dn = to_double_down(r), up = to_double_up(r);
        CHECK(rational_from_double_exact(dn) <= r);
        CHECK(rational_from_double_exact(up) >= r);
        CHECK(up - dn <= 2 * std::abs(dn) * 1e-15 + 1e-300);
    }
    CHECK(rational_from_double_exact(to_double_nearest(Rational(1, 2))) == Rational(1, 2));
}

TEST_CASE("decimal rendering") {
    CHECK(rational_to_decimal_string(Rational(1, 2), 3) == "0.5");
    CHECK(rational_to_decimal_string(Rational(-1, 4), 3) == "-0.25");
    CHECK(rational_to_decimal_string(Rational(533, 100) / rational_pow(Rational(10), 13), 3) == "5.33e-13");
    CHECK(rational_to_decimal_string(Rational(0)) == "0");
    CHECK(rational_to_decimal_string(Rational(2), 3) == "2");
}

TEST_CASE("poly_add basics") {
    // (x^2 - x) + x = x^2
    PolyQ a = from_terms(1, {{{2}, 1}, {{1}, -1}});
    PolyQ b = from_terms(1, {{{1}, 1}});
    CHECK(a + b == from_terms(1, {{{2}, 1}}));
    CHECK(a + PolyQ::zero(1) == a);
    // like terms combine
    PolyQ c = from_terms(2, {{{1, 1}, 1}});
    PolyQ d = from_terms(2, {{{1, 1}, 2}});
    CHECK(c + d == from_terms(2, {{{1, 1}, 3}}));
    CHECK_THROWS(a + c);
}

TEST_CASE("poly_mul basics") {
    PolyQ x = PolyQ::variable(1, 0);
    PolyQ xm1 = from_terms(1, {{{1}, 1}, {{0}, -1}});
    CHECK(x * xm1 == from_terms(1, {{{2}, 1}, {{1}, -1}}));
    CHECK(x * PolyQ::constant(1, Rational(1)) == x);
    // (x1+x2)^2
    PolyQ s = from_terms(2, {{{1, 0}, 1}, {{0, 1}, 1}});
    CHECK(s * s == from_terms(2, {{{2, 0}, 1}, {{1, 1}, 2}, {{0, 2}, 1}}));
    MultiIndex d = (s * s).multi_degree();
    CHECK(d == MultiIndex{2, 2});
}

TEST_CASE("partial derivative") {
    PolyQ p = from_terms(1, {{{2}, 1}, {{1}, -1}});
    CHECK(p.partial_derivative(0) == from_terms(1, {{{1}, 2}, {{0}, -1}}));
    CHECK(PolyQ::constant(1, Rational(5)).partial_derivative(0).is_zero());
    PolyQ q = from_terms(2, {{{2, 3}, 1}});
    CHECK(q.partial_derivative(1) == from_terms(2, {{{2, 2}, 3}}));
    CHECK_THROWS(p.partial_derivative(3));
}

TEST_CASE("affine substitution") {
    PolyQ x = PolyQ::variable(1, 0);
    // x on [-1,1] -> 2y - 1
    CHECK(affine_substitute(x, 0, Rational(-1), Rational(1)) == from_terms(1, {{{1}, 2}, {{0}, -1}}));
    // identity map on [0,1]
    PolyQ p = from_terms(1, {{{2}, 1}});
    CHECK(affine_substitute(p, 0, Rational(0), Rational(1)) == p);
    // x on [4, 6.36] -> 4 + 59/25 y, checked against direct evaluation
    PolyQ sub = affine_substitute(x, 0, Rational(4), Rational(159, 25));
    CHECK(sub.coefficient(MultiIndex{0}) == Rational(4));
    CHECK(sub.coefficient(MultiIndex{1}) == Rational(59, 25));
    for (int i = 0; i <= 10; ++i) {
        Rational y(i, 10);
        Rational xx = Rational(4) + (Rational(159, 25) - Rational(4)) * y;
        CHECK(sub.eval({y}) == x.eval({xx}));
    }
}

TEST_CASE("eval") {
    PolyQ p = from_terms(1, {{{2}, 1}, {{1}, -1}});
    CHECK(p.eval({Rational(1, 2)}) == Rational(-1, 4));
    PolyQ q = from_terms(3, {{{1, 2, 0}, 4}, {{0, 0, 0}, 7}});
    CHECK(q.eval({Rational(0), Rational(0), Rational(0)}) == Rational(7));
}

TEST_CASE("interval arithmetic basics") {
    RatInterval a(Rational(0), Rational(1));
    RatInterval sq = a * a;
    CHECK(sq.lo == 0);
    CHECK(sq.hi == 1);
    RatInterval inv = RatInterval(Rational(1)) / RatInterval(Rational(1), Rational(2));
    CHECK(inv.lo == Rational(1, 2));
    CHECK(inv.hi == 1);
    CHECK_THROWS_AS(RatInterval(Rational(1)) / RatInterval(Rational(-1), Rational(1)),
                    DivisionByZeroInterval);
    // the overview chain: [-0.125,1]*[-1,1] + [0,1]*[-1,1] + [-0.25,0]*[-1,1] = [-2.25, 2.25]
    RatInterval e(Rational(-1), Rational(1));
    RatInterval chain = RatInterval(Rational(-1, 8), Rational(1)) * e +
                        RatInterval(Rational(0), Rational(1)) * e +
                        RatInterval(Rational(-1, 4), Rational(0)) * e;
    CHECK(chain.lo == Rational(-9, 4));
    CHECK(chain.hi == Rational(9, 4));
}

TEST_CASE("float interval endpoints round outward") {
    DblInterval third = DblInterval(1.0) / DblInterval(3.0);
    CHECK(third.lo < 1.0 / 3.0);
    CHECK(third.hi > 1.0 / 3.0);
    DblInterval w = widen_outward(Rational(3, 5), Rational(3, 5));
    CHECK(rational_from_double_exact(w.lo) < Rational(3, 5));
    CHECK(rational_from_double_exact(w.hi) > Rational(3, 5));
}

TEST_CASE("ring homomorphism property: eval commutes with + and *") {
    for (int trial = 0; trial < 200; ++trial) {
        std::uniform_int_distribution<std::size_t> nv(1, 4);
        std::size_t n = nv(rng());
        PolyQ a = random_poly(n, 5), b = random_poly(n, 5);
        for (int pt = 0; pt < 10; ++pt) {
            auto x = random_point(n);
            CHECK((a + b).eval(x) == a.eval(x) + b.eval(x));
            CHECK((a * b).eval(x) == a.eval(x) * b.eval(x));
        }
    }
}

TEST_CASE("derivative matches central differences in the float backend") {
    std::uniform_real_distribution<double> un(0.1, 0.9);
    for (int trial = 0; trial < 50; ++trial) {
        PolyQ pq = random_poly(2, 4);
        Polynomial<double> p = widen(pq);
        Polynomial<double> dp = p.partial_derivative(0);
        double x = un(rng()), y = un(rng());
        const double h = 1e-6;
        double fd = (p.eval({x + h, y}) - p.eval({x - h, y})) / (2 * h);
        double ex = dp.eval({x, y});
        CHECK(std::abs(fd - ex) <= 1e-5 * (1.0 + std::abs(ex)));
    }
}

TEST_CASE("interval range contains sampled values") {
    for (int trial = 0; trial < 40; ++trial) {
        std::size_t n = 2;
        PolyQ p = random_poly(n, 4);
        std::vector<RatInterval> box{RatInterval(Rational(-1), Rational(2)),
                                     RatInterval(Rational(0), Rational(1))};
        RatInterval enc = p.interval_range(box);
        std::uniform_int_distribution<int> num(0, 24);
        for (int pt = 0; pt < 25; ++pt) {
            Rational x = Rational(-1) + Rational(3) * frac(num(rng()), 24);
            Rational y = frac(num(rng()), 24);
            CHECK(enc.contains(p.eval({x, y})));
        }
    }
}

TEST_CASE("affine substitution round-trips exactly") {
    for (int trial = 0; trial < 50; ++trial) {
        PolyQ p = random_poly(3, 4);
        Rational a(-7, 3), b(11, 5);
        // forward x = a + (b-a) y, inverse y = (x - a)/(b - a)
        PolyQ q = affine_substitute(p, 1, a, b);
        Rational inv_a = -a / (b - a), inv_b = (Rational(1) - a) / (b - a);
        PolyQ back = affine_substitute(q, 1, inv_a, inv_b);
        CHECK(back == p);
    }
}

TEST_CASE("rational function arithmetic") {
    PolyQ x = PolyQ::variable(1, 0);
    RationalFunction<Rational> f(x, from_terms(1, {{{1}, 1}, {{0}, 1}}));  // x/(1+x)
    RationalFunction<Rational> g = f + f;
    CHECK(g.eval({Rational(1)}) == Rational(1));
    RationalFunction<Rational> constant_den(x, PolyQ::constant(1, Rational(2)));
    CHECK(constant_den.is_polynomial());
    CHECK(constant_den.as_polynomial().coefficient(MultiIndex{1}) == Rational(1, 2));
    CHECK((f - f).is_zero());
}
