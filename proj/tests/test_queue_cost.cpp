#include "amsdu/queue_cost.hpp"

#include <doctest.h>

#include <random>

using namespace amsdu;

namespace {

// Mean number waiting in an M/G/1 FCFS queue, estimated by the Lindley
// recursion and Little's law. Independent check on the textbook variant.
template <class Service>
double simulate_mean_queue(double lambda, Service service, std::uint64_t customers,
                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> gap(lambda);
  double wait = 0.0, total_wait = 0.0, prev_service = 0.0;
  for (std::uint64_t i = 0; i < customers; ++i) {
    const double a = gap(rng);
    wait = std::max(0.0, wait + prev_service - a);
    total_wait += wait;
    prev_service = service(rng);
  }
  return lambda * total_wait / static_cast<double>(customers);
}

}  // namespace

TEST_CASE("mg1_term direct form") {
  CHECK(mg1_term(0.0, 100.0, 1e-4) == 0.0);
  // (60^2 * 1e-4 + 0.6) / (2 * 0.4) = 0.96 / 0.8
  CHECK(mg1_term(60.0, 100.0, 1e-4) == doctest::Approx(1.2).epsilon(1e-12));
  CHECK(mg1_term(50.0, 100.0, 1e-4) == doctest::Approx(0.75).epsilon(1e-12));

  try {
    mg1_term(100.0, 100.0, 1e-4);
    FAIL("expected instability");
  } catch (const InstabilityError& e) {
    CHECK(e.utilization() == 1.0);
    CHECK(std::string(e.what()).find("utilization") != std::string::npos);
  }
  CHECK_THROWS_AS(mg1_term(150.0, 100.0, 0.0), InstabilityError);
  CHECK_THROWS_AS(mg1_term(1.0, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("retry penalty") {
  CHECK(retry_penalty({50.0, 60.0, 100.0, 1e-4}) == doctest::Approx(0.45).epsilon(1e-12));
  CHECK(retry_penalty({50.0, 50.0, 100.0, 1e-4}) == 0.0);
  CHECK(retry_penalty({0.0, 0.0, 10.0, 3.0}) == 0.0);
  CHECK_THROWS_AS(retry_penalty({50.0, 100.0, 100.0, 1e-4}), InstabilityError);
  CHECK_THROWS_AS(retry_penalty({60.0, 50.0, 100.0, 1e-4}), std::invalid_argument);
  CHECK_THROWS_AS(retry_penalty({50.0, 60.0, 100.0, -1.0}), std::invalid_argument);

  SUBCASE("monotone in lambda2 and sigma") {
    double previous = 0.0;
    for (double l2 = 51.0; l2 < 99.5; l2 += 1.0) {
      const double p = retry_penalty({50.0, l2, 100.0, 1e-4});
      CHECK(p > previous);
      CHECK(retry_penalty({50.0, l2, 100.0, 2e-4}) > p);
      previous = p;
    }
  }
  SUBCASE("continuous at lambda2 -> lambda") {
    double previous = 1.0;
    for (double eps = 1.0; eps > 1e-9; eps /= 10.0) {
      const double p = retry_penalty({50.0, 50.0 + eps, 100.0, 1e-4});
      CHECK(p >= 0.0);
      CHECK(p < previous);
      previous = p;
    }
    CHECK(previous < 1e-8);
  }
}

TEST_CASE("textbook Pollaczek-Khinchine variant") {
  // M/M/1: Var[S] = 1/mu^2 gives Lq = rho^2 / (1 - rho).
  CHECK(pk_mean_queue_length(60.0, 100.0, 1.0 / 1e4) ==
        doctest::Approx(0.36 / 0.4).epsilon(1e-12));
  // M/D/1: Lq = rho^2 / (2 (1 - rho)).
  CHECK(pk_mean_queue_length(60.0, 100.0, 0.0) == doctest::Approx(0.36 / 0.8).epsilon(1e-12));
  CHECK(textbook_retry_penalty({50.0, 60.0, 100.0, 0.0}) ==
        doctest::Approx(0.45 - 0.25).epsilon(1e-12));
  CHECK_THROWS_AS(pk_mean_queue_length(100.0, 100.0, 0.0), InstabilityError);

  SUBCASE("agrees with a queue simulation") {
    const double lambda = 60.0, mu = 100.0;
    const auto deterministic = [mu](std::mt19937_64&) { return 1.0 / mu; };
    const double md1 = simulate_mean_queue(lambda, deterministic, 2000000, 3);
    CHECK(md1 == doctest::Approx(pk_mean_queue_length(lambda, mu, 0.0)).epsilon(0.03));

    std::exponential_distribution<double> service_dist(mu);
    const auto exponential = [&service_dist](std::mt19937_64& rng) { return service_dist(rng); };
    const double mm1 = simulate_mean_queue(lambda, exponential, 2000000, 4);
    CHECK(mm1 == doctest::Approx(pk_mean_queue_length(lambda, mu, 1.0 / (mu * mu))).epsilon(0.05));
  }
}
