#include <catch2/catch_amalgamated.hpp>

#include "cliff/filtration.hpp"
#include "cliff/random.hpp"
#include "cliff/z2.hpp"

using namespace cliff;

namespace {

edge_order small_instance() {
    edge_order eo;
    eo.n = 4;
    eo.order = {{1, 2}, {0, 3}, {0, 1}, {2, 3}, {0, 2}, {1, 3}};
    return eo;
}

}  // namespace

TEST_CASE("build_columns sorts by entry time with deterministic ties") {
    column_order cols = build_columns(small_instance());
    REQUIRE(cols.triangles.size() == 4);
    CHECK(cols.triangles == std::vector<triangle>{{0, 1, 2}, {0, 2, 3}, {0, 1, 3}, {1, 2, 3}});
    CHECK(cols.entry_times == std::vector<row_index>{4, 4, 5, 5});

    edge_order tiny;
    tiny.n = 3;
    tiny.order = {{0, 1}, {0, 2}, {1, 2}};
    column_order single = build_columns(tiny);
    REQUIRE(single.triangles.size() == 1);
    CHECK(single.entry_times == std::vector<row_index>{2});

    edge_order lex;
    lex.n = 4;
    lex.order = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    column_order ordered = build_columns(lex);
    CHECK(ordered.triangles == std::vector<triangle>{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}});
    CHECK(ordered.entry_times == std::vector<row_index>{3, 4, 5, 5});
}

TEST_CASE("explicit tie policy") {
    edge_order eo = small_instance();

    explicit_order swap_both;
    swap_both.classes[4] = {{0, 2, 3}, {0, 1, 2}};
    swap_both.classes[5] = {{1, 2, 3}, {0, 1, 3}};
    column_order cols = build_columns(eo, swap_both);
    CHECK(cols.triangles == std::vector<triangle>{{0, 2, 3}, {0, 1, 2}, {1, 2, 3}, {0, 1, 3}});

    explicit_order missing;
    missing.classes[4] = {{0, 2, 3}, {0, 1, 2}};
    CHECK_THROWS_AS(build_columns(eo, missing), bad_policy);

    explicit_order wrong_members = swap_both;
    wrong_members.classes[5] = {{1, 2, 3}, {1, 2, 3}};
    CHECK_THROWS_AS(build_columns(eo, wrong_members), bad_policy);

    explicit_order extra = swap_both;
    extra.classes[3] = {{0, 1, 2}};
    CHECK_THROWS_AS(build_columns(eo, extra), bad_policy);
}

TEST_CASE("boundary_matrix matches the four-triangle instance") {
    filtration f = make_filtration(small_instance());
    staircase_matrix m = boundary_matrix(f);
    CHECK(m.rows == 6);
    CHECK(m.columns == std::vector<sparse_column>{{0, 2, 4}, {1, 3, 4}, {1, 2, 5}, {0, 3, 5}});
    CHECK(validate_staircase(m));

    edge_order tiny;
    tiny.n = 3;
    tiny.order = {{0, 1}, {0, 2}, {1, 2}};
    staircase_matrix single = boundary_matrix(make_filtration(tiny));
    CHECK(single.columns == std::vector<sparse_column>{{0, 1, 2}});
}

TEST_CASE("validate_staircase") {
    CHECK(validate_staircase(boundary_matrix(make_filtration(small_instance()))));
    CHECK_FALSE(validate_staircase(staircase_matrix{3, {{2}, {1}}}));
    CHECK(validate_staircase(staircase_matrix{3, {{1}, {}, {1}}}));
}

TEST_CASE("filtration consistency validation") {
    filtration f = make_filtration(small_instance());
    CHECK(validate(f));

    filtration broken = f;
    std::swap(broken.columns.triangles[0], broken.columns.triangles[2]);
    CHECK_FALSE(validate(broken));

    filtration wrong_entry = f;
    wrong_entry.columns.entry_times[1] = 3;
    CHECK_FALSE(validate(wrong_entry));

    filtration duplicated = f;
    duplicated.columns.triangles[1] = duplicated.columns.triangles[0];
    CHECK_FALSE(validate(duplicated));
}

TEST_CASE("boundary matrices of random edge orders") {
    for (std::uint64_t trial = 0; trial < 40; ++trial) {
        const std::uint32_t n = 4 + static_cast<std::uint32_t>(trial % 6);
        edge_order eo = er_order(n, seed{trial, "filt-prop"});
        filtration f = make_filtration(eo);
        REQUIRE(validate(f));
        staircase_matrix m = boundary_matrix(f);
        CHECK(validate_staircase(m));
        std::uint64_t entries = 0;
        for (std::size_t j = 0; j < m.columns.size(); ++j) {
            REQUIRE(m.columns[j].size() == 3);
            // pivot equals the triangle's entry time
            CHECK(m.columns[j].back() == f.columns.entry_times[j]);
            entries += m.columns[j].size();
        }
        CHECK(entries == 3 * triangle_count(n));

        // a step column exists for row p iff edge p closes a triangle
        std::vector<char> has_class(m.rows, 0);
        for (row_index t : f.columns.entry_times) has_class[t] = 1;
        const std::vector<row_index> ranks = eo.rank_table();
        for (row_index p = 0; p < m.rows; ++p) {
            const edge e = eo.order[p];
            bool closes = false;
            for (std::uint32_t x = 0; x < n && !closes; ++x) {
                if (x == e.u || x == e.v) continue;
                closes = ranks[static_cast<std::size_t>(x) * n + e.u] < p &&
                         ranks[static_cast<std::size_t>(x) * n + e.v] < p;
            }
            CHECK(has_class[p] == static_cast<char>(closes));
        }

        // fill-up lower bound for complete clique filtrations
        reduction_result red = reduce(m);
        CHECK(red.stats.fill_up >= edge_count(n) - n);
    }
}
