#pragma once

// Estimation driver: walks an index range of the quasirandom sequence, turns
// each point into a density matrix, classifies it and tallies integer
// counters. Work is split into contiguous index blocks (one per worker, per
// checkpoint interval) reached by skip-ahead, so the counters depend only on
// (scenario, sequence, index range) and never on the thread count.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <exception>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "sepprob/criteria.hpp"
#include "sepprob/normal.hpp"
#include "sepprob/qrng.hpp"
#include "sepprob/rmt.hpp"

namespace sepprob {

struct Counters {
  std::uint64_t n_total = 0;  // classified samples (skipped ones excluded)
  std::uint64_t n_skipped = 0;
  std::uint64_t n_ppt = 0;
  std::uint64_t n_ppt_det_greater = 0;
  std::uint64_t n_realign_entangled = 0;
  std::uint64_t n_bound_entangled = 0;

  Counters& operator+=(const Counters& o) {
    n_total += o.n_total;
    n_skipped += o.n_skipped;
    n_ppt += o.n_ppt;
    n_ppt_det_greater += o.n_ppt_det_greater;
    n_realign_entangled += o.n_realign_entangled;
    n_bound_entangled += o.n_bound_entangled;
    return *this;
  }
  friend bool operator==(const Counters&, const Counters&) = default;

  /// Sequence indices consumed: one per sample, skipped or not.
  std::uint64_t consumed() const { return n_total + n_skipped; }

  bool consistent() const {
    return n_ppt_det_greater <= n_ppt && n_ppt <= n_total &&
           n_bound_entangled <= std::min(n_ppt, n_realign_entangled) && n_realign_entangled <= n_total;
  }
};

inline Counters merge(Counters a, const Counters& b) { return a += b; }

struct Checkpoint {
  std::string scenario;
  std::uint64_t n = 0;  // next sequence index to be processed
  Counters counters;
  std::optional<double> conjecture;  // registry value the estimate is compared with
  std::int64_t unix_time = 0;

  double p_ppt() const { return ratio(counters.n_ppt, counters.n_total); }
  double det_greater_fraction() const { return ratio(counters.n_ppt_det_greater, counters.n_ppt); }
  double realign_fraction() const { return ratio(counters.n_realign_entangled, counters.n_total); }
  double bound_fraction() const { return ratio(counters.n_bound_entangled, counters.n_total); }
  std::optional<double> conjecture_ratio() const {
    if (!conjecture) return std::nullopt;
    return p_ppt() / *conjecture;
  }

 private:
  static double ratio(std::uint64_t num, std::uint64_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
  }
};

struct RunOptions {
  std::uint64_t n_start = 0;
  std::uint64_t n_end = 0;
  std::uint64_t interval = 1'000'000;
  unsigned threads = 1;
  bool realign = false;
  std::string scenario_id;
  std::optional<double> conjecture;
  Counters initial;  // counters carried over from a resumed run
};

struct RunResult {
  std::vector<Checkpoint> checkpoints;
  Counters counters;
};

/// Default spacing between checkpoints: 5e6 for 4x4 systems, 1e6 for larger ones.
inline std::uint64_t default_interval(const Scenario& s) { return s.dim() <= 4 ? 5'000'000 : 1'000'000; }

namespace detail {

template <Scalar T>
Counters process_block(const Scenario& scenario, const SequenceSpec& spec, std::uint64_t lo, std::uint64_t hi,
                       bool realign) {
  Counters c;
  if (lo >= hi) return c;
  SequenceState state(spec, lo);
  std::vector<double> uniforms(spec.d);
  std::vector<double> normals(spec.d);
  DensitySampler<T> sampler(scenario);
  QuickClassifier<T> classify_fast;

  for (std::uint64_t n = lo; n < hi; ++n, state.advance()) {
    state.uniforms(uniforms);
    try {
      uniforms_to_normals(uniforms, normals);
      const auto& rho = sampler.sample(normals);
      const QuickVerdict v = classify_fast(rho, realign);
      ++c.n_total;
      c.n_ppt += v.ppt;
      c.n_ppt_det_greater += v.ppt && v.det_pt_greater;
      c.n_realign_entangled += v.realign_entangled;
      c.n_bound_entangled += v.ppt && v.realign_entangled;
    } catch (const SkipSample&) {
      ++c.n_skipped;
    } catch (const std::domain_error&) {  // a coordinate landed exactly on 0
      ++c.n_skipped;
    } catch (const ConvergenceError&) {
      ++c.n_skipped;
    }
  }
  return c;
}

inline Counters process_block_any(const Scenario& scenario, const SequenceSpec& spec, std::uint64_t lo,
                                  std::uint64_t hi, bool realign) {
  if (scenario.field == Field::complex) return process_block<cplx>(scenario, spec, lo, hi, realign);
  return process_block<double>(scenario, spec, lo, hi, realign);
}

// Splits [lo, hi) into `workers` contiguous blocks and merges their counters in block order.
inline Counters process_range(const Scenario& scenario, const SequenceSpec& spec, std::uint64_t lo, std::uint64_t hi,
                              bool realign, unsigned workers) {
  const std::uint64_t len = hi - lo;
  workers = static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers, len)));
  if (workers == 1) return process_block_any(scenario, spec, lo, hi, realign);

  std::vector<Counters> partial(workers);
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t b0 = lo + len * w / workers;
      const std::uint64_t b1 = lo + len * (w + 1) / workers;
      pool.emplace_back([&, w, b0, b1] {
        try {
          partial[w] = process_block_any(scenario, spec, b0, b1, realign);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  Counters total;
  for (const auto& p : partial) total += p;
  return total;
}

}  // namespace detail

/// Runs the pipeline over [n_start, n_end), emitting a checkpoint after every
/// `interval` indices and at n_end. `on_checkpoint` is called from the calling
/// thread only.
inline RunResult run(const Scenario& scenario, const SequenceSpec& spec, const RunOptions& opt,
                     const std::function<void(const Checkpoint&)>& on_checkpoint = {}) {
  validate(scenario);
  if (variate_count(scenario) != spec.d)
    throw std::invalid_argument("run: sequence dimension " + std::to_string(spec.d) + " does not match scenario (" +
                                std::to_string(variate_count(scenario)) + " variates)");
  if (opt.n_end < opt.n_start) throw std::invalid_argument("run: n_end < n_start");
  if (opt.interval == 0) throw std::invalid_argument("run: checkpoint interval must be positive");

  RunResult result;
  result.counters = opt.initial;
  const unsigned workers = std::max(1U, opt.threads);
  for (std::uint64_t lo = opt.n_start; lo < opt.n_end;) {
    const std::uint64_t hi = std::min(opt.n_end, lo + std::min(opt.interval, opt.n_end - lo));
    result.counters += detail::process_range(scenario, spec, lo, hi, opt.realign, workers);
    Checkpoint cp;
    cp.scenario = opt.scenario_id;
    cp.n = hi;
    cp.counters = result.counters;
    cp.conjecture = opt.conjecture;
    cp.unix_time = std::chrono::duration_cast<std::chrono::seconds>(
                       std::chrono::system_clock::now().time_since_epoch())
                       .count();
    if (on_checkpoint) on_checkpoint(cp);
    result.checkpoints.push_back(std::move(cp));
    lo = hi;
  }
  return result;
}

}  // namespace sepprob
