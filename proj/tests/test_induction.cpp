#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rauzy/classes.hpp"
#include "rauzy/error.hpp"
#include "rauzy/induction.hpp"
#include "rauzy/suspension.hpp"

using namespace rauzy;

namespace {

Complex z(long re, long im) { return {Rational(re), Rational(im)}; }

Lengths lengths(std::initializer_list<long> xs) {
    Lengths out;
    for (long x : xs)
        out.emplace_back(x);
    return out;
}

} // namespace

TEST_CASE("moves on the worked example") {
    auto p = parse("1 2 3 4 3 / 2 4 5 5 1");
    CHECK(format(*r0(p)) == "1 2 1 3 4 3 / 2 4 5 5");
    CHECK(format(*r1(p)) == "1 2 3 2 4 / 3 4 5 5 1");
    // intermediate table before renumbering
    CHECK(format(row_swap(*r0_prime(row_swap(p)))) == "1 3 2 3 4 / 2 4 5 5 1");
}

TEST_CASE("moves on permutations") {
    auto p = parse("1 2 3 4 / 4 3 2 1");
    CHECK(format(*r0(p)) == "1 2 3 4 / 4 1 3 2");
    CHECK(format(*r1(p)) == "1 2 3 4 / 2 4 3 1");
    auto t = parse("1 2 / 2 1");
    CHECK(*r0(t) == t);
    CHECK(*r1(t) == t);
}

TEST_CASE("undefined moves") {
    // other occurrence of the last top symbol on top, no doubled bottom symbol
    CHECK_FALSE(r1(parse("1 1 / 2 2 3 3")).has_value());
    CHECK(r0(parse("1 1 / 2 2 3 3")).has_value());
    // same symbol at both right ends
    CHECK_FALSE(r0(parse("1 2 / 1 2")).has_value());
    CHECK_FALSE(r1(parse("1 2 / 1 2")).has_value());
}

TEST_CASE("conjugation identity") {
    for (std::size_t d = 1; d <= 4; ++d)
        for (const auto& t : oracle::reduced_tables(d)) {
            GenPerm p(t);
            auto lhs = r1(p);
            auto raw = r0_prime(row_swap(p));
            CHECK(lhs.has_value() == raw.has_value());
            if (lhs && raw)
                CHECK(*lhs == reduce(row_swap(*raw)));
        }
}

TEST_CASE("moves preserve irreducibility and d; interval exchanges always move") {
    for (std::size_t d = 2; d <= 5; ++d)
        for (auto kind : {PermKind::Iet, PermKind::Quadratic})
            for (const auto& p : enumerate_irreducible(d, kind))
                for (auto mv : {Move::Zero, Move::One}) {
                    auto q = apply_move(p, mv);
                    if (kind == PermKind::Iet) {
                        REQUIRE(q.has_value());
                        CHECK(q->top_size() == d);
                        CHECK(q->kind() == PermKind::Iet);
                    }
                    if (q) {
                        CHECK(q->size() == d);
                        CHECK(is_irreducible(*q));
                    }
                }
}

TEST_CASE("classify_step") {
    auto t = parse("1 2 / 2 1");
    CHECK(classify_step(t, lengths({2, 1})) == Move::One);
    CHECK(classify_step(t, lengths({1, 2})) == Move::Zero);
    CHECK_FALSE(classify_step(t, lengths({1, 1})).has_value());
    // right ends carry 2 and 3; the row relation forces lambda_1 = lambda_3
    CHECK_FALSE(classify_step(parse("1 1 2 / 2 3 3"), lengths({1, 1, 1})).has_value());
    CHECK(classify_step(parse("1 1 2 / 2 3 3"), lengths({1, 2, 1})) == Move::Zero);
    CHECK_THROWS_AS(classify_step(t, lengths({1, 1, 1})), Error);
    try {
        classify_step(t, lengths({1}));
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DimensionMismatch);
    }
    try {
        classify_step(parse("1 1 / 2 2 3 3"), lengths({1, 1, 1}));
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::InvalidLengths);
    }
}

TEST_CASE("one Rauzy-Veech step") {
    auto t = parse("1 2 / 2 1");
    auto step = rv_step(t, {z(3, 1), z(1, -1)});
    CHECK(step.move == Move::One);
    CHECK(step.perm == t);
    CHECK(step.zeta == SuspensionDatum{z(2, 2), z(1, -1)});
    CHECK(check_suspension(step.perm, step.zeta));

    try {
        rv_step(t, {z(1, 1), z(1, -1)});
        FAIL("expected Halt");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Halt);
    }
    try {
        rv_step(t, {z(1, 1)});
        FAIL("expected DimensionMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DimensionMismatch);
    }
}

TEST_CASE("orbit") {
    auto t = parse("1 2 / 2 1");
    auto tr = orbit(t, lengths({1, 1}), 10);
    CHECK(tr.halted);
    CHECK(tr.steps() == 0);

    // Euclid on (5, 3): 5-3=2, 3-2=1, 2-1=1, halt
    tr = orbit(t, lengths({5, 3}), 100);
    CHECK(tr.halted);
    CHECK(tr.steps() == 3);
    CHECK(tr.records.back().lambda == lengths({1, 1}));
    CHECK(to_json(tr.records.front()).dump() == R"({"lambda":["5","3"],"move":"1","perm":"1 2 / 2 1","step":0})");

    auto budget = orbit(t, lengths({1000, 1}), 5);
    CHECK_FALSE(budget.halted);
    CHECK(budget.steps() == 5);
}

TEST_CASE("total length decreases along orbits and matches the real part of rv_step") {
    std::mt19937_64 rng(7);
    for (std::size_t d = 2; d <= 5; ++d)
        for (auto kind : {PermKind::Iet, PermKind::Quadratic})
            for (const auto& p : enumerate_irreducible(d, kind)) {
                auto zeta = perturb_suspension(p, *find_suspension(p), rng());
                Lengths lambda;
                for (const auto& c : zeta)
                    lambda.push_back(c.re);
                auto tr = orbit(p, lambda, 20);
                GenPerm q = p;
                Rational previous;
                for (std::size_t i = 0; i < tr.records.size(); ++i) {
                    const auto& rec = tr.records[i];
                    CHECK(rec.perm == q);
                    Rational total;
                    for (Symbol s : q.top())
                        total += rec.lambda[s - 1];
                    if (i > 0)
                        CHECK(total < previous);
                    previous = total;
                    for (std::size_t k = 0; k < zeta.size(); ++k)
                        CHECK(zeta[k].re == rec.lambda[k]);
                    if (!rec.move)
                        break;
                    auto step = rv_step(q, zeta);
                    CHECK(step.move == *rec.move);
                    CHECK(check_suspension(step.perm, step.zeta));
                    q = step.perm;
                    zeta = step.zeta;
                }
            }
}
