#pragma once

#include <stdexcept>

namespace amsdu {

/// M/G/1 inputs for the retransmission queueing penalty. sigma enters the
/// formula unscaled; its units are the caller's choice.
struct Mg1Params {
  double lambda_base = 0.0;   ///< packets/s without retries
  double lambda_retry = 0.0;  ///< packets/s including software re-aggregation retries
  double mu = 1.0;            ///< service rate, packets/s
  double sigma = 0.0;
};

/// Utilization lambda/mu reached or exceeded 1.
class InstabilityError : public std::domain_error {
 public:
  explicit InstabilityError(double utilization);
  double utilization() const noexcept { return utilization_; }

 private:
  double utilization_;
};

/// (lambda^2 sigma + lambda/mu) / (2 (1 - lambda/mu)).
double mg1_term(double lambda, double mu, double sigma);

/// mg1_term(lambda_retry) - mg1_term(lambda_base): extra packets to hold.
double retry_penalty(const Mg1Params& params);

/// Pollaczek-Khinchine mean queue length (waiting only),
/// (lambda^2 Var[S] + rho^2) / (2 (1 - rho)).
double pk_mean_queue_length(double lambda, double mu, double service_variance);

/// retry_penalty with the textbook form, reading sigma as Var[S].
double textbook_retry_penalty(const Mg1Params& params);

}  // namespace amsdu
