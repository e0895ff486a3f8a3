#include <doctest.h>

#include "specnorm/error.hpp"
#include "specnorm/kernels.hpp"
#include "specnorm/laws.hpp"

using namespace specnorm;

TEST_CASE("tiny-norm counts and minimum") {
    const LawReport r = check_tiny_norm(2);
    CHECK(r.passed());
    CHECK(r.trials == 3 + 15);
    const Json& per = r.stats["per_dim"];
    CHECK(per[0]["functions"] == 3);
    CHECK(per[0]["cosets"] == 3);
    // n = 2: 4 points, 6 cosets of order 2, the whole group
    CHECK(per[1]["functions"] == 15);
    CHECK(per[1]["cosets"] == 11);
    CHECK(per[1]["min_non_coset_a_norm"] == 1.5);
    CHECK_THROWS_AS(check_tiny_norm(5), InvalidArgument);
}

TEST_CASE("every law passes at small size") {
    LawOptions o{6, 20, 3};
    for (const std::string& id : law_ids()) {
        CAPTURE(id);
        LawOptions oi = o;
        if (id == "tiny-norm") oi.n = 3;
        if (id == "pd") oi = {3, 500, 3};
        const LawReport r = run_law(id, oi);
        CHECK(r.passed());
        CHECK_FALSE(r.counterexample.has_value());
        if (!r.report_only) CHECK(r.worst_margin >= 0.0);
    }
    CHECK_THROWS_AS(run_law("nope", o), InvalidArgument);
}

TEST_CASE("law reports do not depend on the thread count") {
    const int saved = kernels::threads();
    for (const std::string id : {"approx-hom", "bogolyubov", "roundtrip", "lemma14"}) {
        CAPTURE(id);
        const LawOptions o{7, 12, 9};
        kernels::set_threads(1);
        const std::string one = to_json(run_law(id, o)).dump();
        kernels::set_threads(4);
        const std::string four = to_json(run_law(id, o)).dump();
        CHECK(one == four);
    }
    kernels::set_threads(saved);
}

TEST_CASE("seeds change the sample") {
    const std::string a = to_json(run_law("roundtrip", {6, 10, 1})).dump();
    const std::string b = to_json(run_law("roundtrip", {6, 10, 2})).dump();
    CHECK(a != b);
}
