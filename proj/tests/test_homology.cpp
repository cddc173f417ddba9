#include <catch2/catch_amalgamated.hpp>

#include "cliff/homology.hpp"
#include "cliff/random.hpp"

using namespace cliff;

namespace {

edge_order small_instance() {
    edge_order eo;
    eo.n = 4;
    eo.order = {{1, 2}, {0, 3}, {0, 1}, {2, 3}, {0, 2}, {1, 3}};
    return eo;
}

}  // namespace

TEST_CASE("positive_edges") {
    CHECK(positive_edges(small_instance()) == std::vector<row_index>{3, 4, 5});

    // spanning tree first: star edges then the rest
    edge_order star;
    star.n = 4;
    star.order = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    CHECK(positive_edges(star) == std::vector<row_index>{3, 4, 5});

    edge_order pair;
    pair.n = 2;
    pair.order = {{0, 1}};
    CHECK(positive_edges(pair).empty());

    // complement size is n-1 on every complete instance
    for (std::uint64_t root = 0; root < 20; ++root) {
        const std::uint32_t n = 4 + root % 6;
        edge_order eo = er_order(n, seed{root, "pos"});
        CHECK(positive_edges(eo).size() == edge_count(n) - (n - 1));
    }
}

TEST_CASE("betti1_profile on the four-triangle instance") {
    filtration f = make_filtration(small_instance());
    reduction_result red = reduce(boundary_matrix(f));
    CHECK(betti1_profile(f, red.matrix) == std::vector<std::uint32_t>{0, 0, 0, 0, 1, 0, 0});

    edge_order tiny;
    tiny.n = 3;
    tiny.order = {{0, 2}, {1, 2}, {0, 1}};
    filtration tf = make_filtration(tiny);
    reduction_result tr = reduce(boundary_matrix(tf));
    CHECK(betti1_profile(tf, tr.matrix) == std::vector<std::uint32_t>{0, 0, 0, 0});

    staircase_matrix wrong{3, {{0}}};
    CHECK_THROWS_AS(betti1_profile(f, wrong), inconsistent_input);
}

TEST_CASE("betti1_bruteforce examples") {
    edge_order eo = small_instance();
    CHECK(betti1_bruteforce(eo, 0) == 0);
    CHECK(betti1_bruteforce(eo, 4) == 1);
    CHECK(betti1_bruteforce(eo, 6) == 0);
}

TEST_CASE("profile agrees with the brute-force oracle") {
    for (std::uint64_t trial = 0; trial < 40; ++trial) {
        const std::uint32_t n = 4 + trial % 5;
        edge_order eo = er_order(n, seed{trial, "oracle"});
        filtration f = make_filtration(eo);
        reduction_result red = reduce(boundary_matrix(f));
        std::vector<std::uint32_t> profile = betti1_profile(f, red.matrix);
        REQUIRE(profile.size() == eo.order.size() + 1);
        for (std::uint32_t i = 0; i <= eo.order.size(); ++i)
            REQUIRE(profile[i] == betti1_bruteforce(eo, i));
        CHECK(profile.front() == 0);
        CHECK(profile.back() == 0);
    }
}

TEST_CASE("critical indices certify cycles") {
    filtration f = make_filtration(small_instance());
    reduction_result red = reduce(boundary_matrix(f));
    REQUIRE(red.stats.critical_indices == std::vector<row_index>{3});
    CHECK(critical_implies_cycle(f, red.matrix, red.stats));

    // lexicographic order on K_4 has no critical indices: vacuously true
    edge_order lex;
    lex.n = 4;
    lex.order = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    filtration lf = make_filtration(lex);
    reduction_result lr = reduce(boundary_matrix(lf));
    CHECK(lr.stats.critical_indices.empty());
    CHECK(critical_implies_cycle(lf, lr.matrix, lr.stats));

    // and the deterministic fill-up bound that rests on it
    for (std::uint64_t trial = 0; trial < 200; ++trial) {
        const std::uint32_t n = 4 + trial % 5;
        edge_order eo = er_order(n, seed{trial, "lemma3"});
        filtration rf = make_filtration(eo);
        reduction_result rr = reduce(boundary_matrix(rf));
        CHECK(critical_implies_cycle(rf, rr.matrix, rr.stats));
        std::vector<std::uint32_t> profile = betti1_profile(rf, rr.matrix);
        std::uint64_t bound = 3 * edge_count(n);
        for (std::uint32_t i = 0; i < profile.size(); ++i)
            if (profile[i] > 0) bound += i;
        CHECK(rr.stats.fill_up <= bound);
    }
}

TEST_CASE("default_scan_grid") {
    std::vector<std::uint32_t> grid = default_scan_grid(435);
    CHECK(grid.back() == 435);
    CHECK(grid.front() >= 1);
    for (std::size_t k = 1; k < grid.size(); ++k) CHECK(grid[k] > grid[k - 1]);
    CHECK(grid.size() <= 30);
}

TEST_CASE("betti_probability_scan") {
    scan_model model;
    model.model = scan_model::kind::er;
    const std::uint32_t m = static_cast<std::uint32_t>(edge_count(10));

    betti_scan_result at_end = betti_probability_scan(model, 10, 30, {m}, seed{7});
    REQUIRE(at_end.p_hat.size() == 1);
    CHECK(at_end.p_hat[0] == 0.0);  // the complete complex has no cycles

    betti_scan_result full = betti_probability_scan(model, 10, 30, default_scan_grid(m), seed{7});
    betti_scan_result serial = betti_probability_scan(model, 10, 30, default_scan_grid(m), seed{7}, false);
    CHECK(full.p_hat == serial.p_hat);
    for (double p : full.p_hat) {
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
    }

    std::string csv = scan_to_csv(full);
    CHECK(csv.rfind("model,n,trials,i,p_hat\n", 0) == 0);

    scan_model vr;
    vr.model = scan_model::kind::vr;
    vr.dim = 2;
    betti_scan_result vr_scan = betti_probability_scan(vr, 8, 10, {1, 10, 28}, seed{9});
    CHECK(vr_scan.model == "vr(d=2)");
    CHECK(vr_scan.p_hat.back() == 0.0);
}
