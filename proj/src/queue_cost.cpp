#include "amsdu/queue_cost.hpp"

#include <fmt/format.h>

namespace amsdu {

namespace {

double utilization(double lambda, double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument(fmt::format("mu must be > 0 (got {})", mu));
  if (!(lambda >= 0.0))
    throw std::invalid_argument(fmt::format("arrival rate must be >= 0 (got {})", lambda));
  const double rho = lambda / mu;
  if (rho >= 1.0) throw InstabilityError(rho);
  return rho;
}

void check(const Mg1Params& p) {
  if (!(p.sigma >= 0.0))
    throw std::invalid_argument(fmt::format("sigma must be >= 0 (got {})", p.sigma));
  if (!(p.lambda_base <= p.lambda_retry))
    throw std::invalid_argument(fmt::format("lambda_retry ({}) must be >= lambda_base ({})",
                                            p.lambda_retry, p.lambda_base));
}

}  // namespace

InstabilityError::InstabilityError(double utilization)
    : std::domain_error(fmt::format(
          "M/G/1 queue unstable: utilization lambda/mu = {} (must be < 1)", utilization)),
      utilization_(utilization) {}

double mg1_term(double lambda, double mu, double sigma) {
  const double rho = utilization(lambda, mu);
  return (lambda * lambda * sigma + lambda / mu) / (2.0 * (1.0 - rho));
}

double retry_penalty(const Mg1Params& p) {
  check(p);
  return mg1_term(p.lambda_retry, p.mu, p.sigma) - mg1_term(p.lambda_base, p.mu, p.sigma);
}

double pk_mean_queue_length(double lambda, double mu, double service_variance) {
  const double rho = utilization(lambda, mu);
  return (lambda * lambda * service_variance + rho * rho) / (2.0 * (1.0 - rho));
}

double textbook_retry_penalty(const Mg1Params& p) {
  check(p);
  return pk_mean_queue_length(p.lambda_retry, p.mu, p.sigma) -
         pk_mean_queue_length(p.lambda_base, p.mu, p.sigma);
}

}  // namespace amsdu
