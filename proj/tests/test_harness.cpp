#include <doctest.h>

#include <numeric>

#include "pulse/harness.hpp"

using namespace pulse;

TEST_CASE("one zero-noise replication lands in bucket zero") {
    ModelSpec m = cp_model(1);
    m.error.scale = 0.0;
    const ReplicationReport r = run_replications(m, Policy::plain, 1, 42);
    CHECK(r.khat_minus_k[3] == 1);
    CHECK(r.bucket0_fraction() == 1.0);
    REQUIRE(r.location_errors.size() == 1);
    CHECK(r.location_errors[0] == 0.0);
}

TEST_CASE("bucket counts sum to the replication count") {
    const ReplicationReport r = run_replications(cp_model(1), Policy::plain, 40, 7);
    const long total = std::accumulate(r.khat_minus_k.begin(), r.khat_minus_k.end(), 0L);
    CHECK(total + r.failures == 40);
    CHECK(r.location_errors.size() == static_cast<std::size_t>(r.khat_minus_k[3]));
    CHECK(r.failures == 0);
}

TEST_CASE("reports are deterministic and thread-count independent") {
    const ModelSpec m = cp_model(1);
    const ReplicationReport a = run_replications(m, Policy::plain, 24, 99, 1);
    const ReplicationReport b = run_replications(m, Policy::plain, 24, 99, 1);
    const ReplicationReport c = run_replications(m, Policy::plain, 24, 99, 4);
    const ReplicationReport d = run_replications(m, Policy::plain, 24, 99, 8);
    CHECK(tabulate(a) == tabulate(b));
    CHECK(tabulate(a) == tabulate(c));
    CHECK(tabulate(a) == tabulate(d));
    CHECK(a.location_errors == c.location_errors);
    CHECK(a.khat_minus_k == d.khat_minus_k);
}

TEST_CASE("tabulate emits the seven buckets then fraction and median") {
    ReplicationReport r;
    r.reps = 200;
    r.khat_minus_k = {0, 0, 0, 200, 0, 0, 0};
    r.location_errors.assign(200, 4.0);
    const std::string row = tabulate(r);
    CHECK(row.substr(0, 14) == "0,0,0,200,0,0,");
    CHECK(row == "0,0,0,200,0,0,0,1,4");

    ReplicationReport empty;
    empty.reps = 3;
    empty.khat_minus_k = {0, 0, 3, 0, 0, 0, 0};
    CHECK(tabulate(empty) == "0,0,3,0,0,0,0,0,");
}

TEST_CASE("tabulated rows round trip") {
    ReplicationReport r;
    r.reps = 10;
    r.khat_minus_k = {1, 0, 2, 5, 1, 1, 0};
    r.location_errors = {3, 9, 4, 4, 8};
    const std::string row = tabulate(r);
    const ReplicationReport back = parse_tabulated(row);
    CHECK(back.khat_minus_k == r.khat_minus_k);
    CHECK(back.reps == r.reps);
    CHECK(tabulate(back) == row);
}

TEST_CASE("reps below one are rejected") {
    CHECK_THROWS_AS(run_replications(cp_model(1), Policy::plain, 0, 1), invalid_input_error);
}

TEST_CASE("pervasive replication failures raise a harness error") {
    // A 10-point series is far too short for any detector window, so every
    // replication fails and the 1% failure budget is blown.
    ModelSpec tiny;
    tiny.signal.n = 10;
    tiny.signal.boundaries = {5};
    tiny.signal.levels = {0.0, 1.0};
    tiny.error.kind = ErrorKind::gauss_unit;
    CHECK_THROWS_AS(run_replications(tiny, Policy::plain, 10, 1), error);
}

TEST_CASE("iterative policy runs end to end") {
    ModelSpec m = cp_model(1);
    m.error.scale = 0.0;
    const ReplicationReport r = run_replications(m, Policy::iterative, 1, 5);
    CHECK(r.khat_minus_k[3] == 1);
}
