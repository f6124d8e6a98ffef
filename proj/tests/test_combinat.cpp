#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "rauzy/classes.hpp"
#include "rauzy/error.hpp"
#include "rauzy/genperm.hpp"

using namespace rauzy;

namespace {

ErrorCode code_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("no error raised");
    return ErrorCode::Io;
}

} // namespace

TEST_CASE("parse") {
    auto p = parse("1 2 3 2 4 / 4 5 1 3 5");
    CHECK(p.top_size() == 5);
    CHECK(p.bottom_size() == 5);
    CHECK(p.size() == 5);
    CHECK(p.kind() == PermKind::Quadratic);

    auto q = parse("1 2 / 2 1");
    CHECK(q.top_size() == 2);
    CHECK(q.size() == 2);
    CHECK(q.kind() == PermKind::Iet);

    CHECK(code_of([] { parse("2 1 / 1 2"); }) == ErrorCode::NotReduced);
    CHECK(code_of([] { parse("1 2 / 2"); }) == ErrorCode::NotTwoToOne);
    CHECK(code_of([] { parse("1 1 1 / 2 2 1"); }) == ErrorCode::NotTwoToOne);
    CHECK(code_of([] { parse(" / 1 1"); }) == ErrorCode::EmptyRow);
    CHECK(code_of([] { parse("1 2 2 1"); }) == ErrorCode::Parse);
    CHECK(code_of([] { parse("1 x / 1"); }) == ErrorCode::Parse);
}

TEST_CASE("json form") {
    auto p = parse("1 1 2 / 2 3 3");
    nlohmann::json j = p;
    CHECK(j.dump() == R"({"bottom":[2,3,3],"top":[1,1,2]})");
    CHECK(perm_from_json(j) == p);
}

TEST_CASE("reduce") {
    CHECK(format(reduce(parse_table("1 3 2 3 4 / 2 4 5 5 1"))) == "1 2 3 2 4 / 3 4 5 5 1");
    CHECK(format(reduce(parse_table("1 2 / 2 1"))) == "1 2 / 2 1");
    CHECK(format(reduce(parse_table("3 3 / 1 1 2 2"))) == "1 1 / 2 2 3 3");
    CHECK(code_of([] { reduce(Table{{1, 2}, {2, 2}}); }) == ErrorCode::NotTwoToOne);

    auto r = reduce_with_map(parse_table("3 3 / 1 1 2 2"));
    CHECK(r.relabel[3] == 1);
    CHECK(r.relabel[1] == 2);
    CHECK(r.relabel[2] == 3);
}

TEST_CASE("reduce is idempotent and parse inverts format") {
    for (std::size_t d = 1; d <= 4; ++d)
        for (auto t : oracle::reduced_tables(d)) {
            // scramble labels, then reduce twice
            for (auto& s : t.top)
                s = static_cast<Symbol>(d + 1 - s);
            for (auto& s : t.bottom)
                s = static_cast<Symbol>(d + 1 - s);
            auto once = reduce(t);
            CHECK(reduce(once.table()) == once);
            CHECK(parse(format(once)) == once);
        }
}

TEST_CASE("row swap") {
    CHECK(row_swap(parse("1 2 / 2 1")) == parse_table("2 1 / 1 2"));
    CHECK(row_swap(parse("1 1 / 2 2 3 3")) == parse_table("2 2 3 3 / 1 1"));
    auto p = parse("1 2 3 2 4 / 4 5 1 3 5");
    CHECK(row_swap(row_swap(p)) == p.table());
}

TEST_CASE("irreducibility") {
    CHECK(is_irreducible(parse("1 2 / 2 1")));
    CHECK_FALSE(is_irreducible(parse("1 1 / 2 2")));
    CHECK_FALSE(is_irreducible(parse("1 2 3 / 1 2 3")));
    CHECK(is_irreducible(parse("1 2 3 2 4 / 4 5 1 3 5")));
}

TEST_CASE("irreducibility agrees with the prefix criterion on interval exchanges") {
    for (std::size_t d = 1; d <= 7; ++d)
        for (const auto& b : oracle::all_permutations(d)) {
            auto p = oracle::iet(b);
            CHECK_MESSAGE(is_irreducible(p) == oracle::prefix_irreducible(b), format(p));
        }
}

TEST_CASE("irreducibility is invariant under exchanging the rows") {
    for (std::size_t d = 1; d <= 4; ++d)
        for (const auto& t : oracle::reduced_tables(d)) {
            GenPerm p(t);
            CHECK_MESSAGE(is_irreducible(p) == is_irreducible(reduce(row_swap(p))), format(p));
        }
}

TEST_CASE("the generator lists exactly the irreducible reduced tables") {
    for (std::size_t d = 2; d <= 5; ++d) {
        std::vector<GenPerm> iet, quad;
        for (const auto& t : oracle::reduced_tables(d)) {
            GenPerm p(t);
            if (!is_irreducible(p))
                continue;
            (p.kind() == PermKind::Iet ? iet : quad).push_back(p);
        }
        auto by_key = [](const GenPerm& a, const GenPerm& b) {
            if (a.top_size() != b.top_size())
                return a.top_size() < b.top_size();
            return a < b;
        };
        std::ranges::sort(iet, by_key);
        std::ranges::sort(quad, by_key);
        CHECK(enumerate_irreducible(d, PermKind::Iet) == iet);
        CHECK(enumerate_irreducible(d, PermKind::Quadratic) == quad);
    }
}
