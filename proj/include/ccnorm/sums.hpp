#pragma once

#include <cmath>
#include <memory>
#include <vector>

#include "core.hpp"
#include "sequences.hpp"
#include "special.hpp"

namespace ccnorm {

enum class Envelope { None, Down, Up };

// Growth class of a weight view: f_k ~ k^-decay, or eventually zero.
struct Asymptotics {
  bool eventually_zero = false;
  double decay = 0.0;
  bool has_mass = false;  // some f_k > 0
};

// A weight (optionally replaced by u-down or u-up) together with the
// row sums the norm formulas need. Power views answer analytically,
// list views from precomputed prefix and suffix arrays.
class WeightView {
 public:
  WeightView(const Weight& u, Envelope env) {
    if (u.is_power()) {
      init_power(u.alpha(), env);
    } else {
      init_list(u, env);
    }
  }

  double at(Index k) const {
    if (k < 1) return 0.0;
    if (power_) {
      if (zero_) return 0.0;
      return k == 1 ? 1.0 : std::pow(static_cast<double>(k), -a_);
    }
    return k <= L_ ? f_[static_cast<std::size_t>(k)] : tail_;
  }

  // f_1 + ... + f_m
  double prefix(Index m) const {
    if (m < 1) return 0.0;
    if (power_) return zero_ ? 0.0 : (*psum_)(m);
    if (m <= L_) return pre_[static_cast<std::size_t>(m)];
    return pre_[static_cast<std::size_t>(L_)] + static_cast<double>(m - L_) * tail_;
  }

  // sum_{k>=m} f_k / k
  double harmonic(Index m) const {
    m = std::max<Index>(m, 1);
    if (power_) {
      if (zero_) return 0.0;
      if (a_ <= 0.0) return kInf;
      return special::hurwitz_tail(a_ + 1.0, m);
    }
    if (tail_ > 0.0) return kInf;
    return m <= L_ ? harm_[static_cast<std::size_t>(m)] : 0.0;
  }

  // sum_{k>=m} f_k / (k(k+1))
  double telescoping(Index m) const {
    m = std::max<Index>(m, 1);
    if (power_) {
      if (zero_) return 0.0;
      if (a_ <= -1.0) return kInf;
      if (a_ == 0.0) return 1.0 / static_cast<double>(m);
      return special::shifted_tail(a_ + 1.0, m);
    }
    if (m > L_) return tail_ / static_cast<double>(m);
    return tele_[static_cast<std::size_t>(m)] + tail_ / static_cast<double>(L_ + 1);
  }

  // sum_{k>=m} f_k / (k+1)
  double shifted(Index m) const {
    m = std::max<Index>(m, 1);
    if (power_) {
      if (zero_) return 0.0;
      if (a_ <= 0.0) return kInf;
      return special::shifted_tail(a_, m);
    }
    if (tail_ > 0.0) return kInf;
    return m <= L_ ? shift_[static_cast<std::size_t>(m)] : 0.0;
  }

  double sum(SumKind kind, Index m) const {
    switch (kind) {
      case SumKind::Point: return at(m);
      case SumKind::Prefix: return prefix(m);
      case SumKind::Harmonic: return harmonic(m);
      case SumKind::Telescoping: return telescoping(m);
      case SumKind::Shifted: return shifted(m);
    }
    return 0.0;
  }

  Asymptotics asymptotics() const {
    if (power_) return {zero_, a_, !zero_};
    bool mass = tail_ > 0.0;
    for (Index k = 1; k <= L_ && !mass; ++k) mass = f_[static_cast<std::size_t>(k)] > 0.0;
    return {!(tail_ > 0.0), 0.0, mass};
  }

  bool is_power() const { return power_; }
  // length of the stored part (lists only)
  Index length() const { return L_; }

 private:
  void init_power(double alpha, Envelope env) {
    power_ = true;
    switch (env) {
      case Envelope::None: a_ = alpha; break;
      case Envelope::Down: a_ = alpha >= 0.0 ? alpha : 0.0; break;
      case Envelope::Up:
        a_ = alpha;
        zero_ = alpha > 0.0;
        break;
    }
    if (!zero_) psum_ = std::make_shared<special::PowerPrefixSum>(a_);
  }

  void init_list(const Weight& u, Envelope env) {
    L_ = u.length();
    f_.assign(static_cast<std::size_t>(L_ + 1), 0.0);
    for (Index k = 1; k <= L_; ++k) f_[static_cast<std::size_t>(k)] = u.at(k);
    tail_ = u.tail_value();
    if (env == Envelope::Down) {
      double m = kInf;
      for (Index k = 1; k <= L_; ++k) {
        m = std::min(m, f_[static_cast<std::size_t>(k)]);
        f_[static_cast<std::size_t>(k)] = m;
      }
      tail_ = std::min(tail_, L_ > 0 ? m : tail_);
    } else if (env == Envelope::Up) {
      const std::vector<double> up = envelope_up(u, L_);
      for (Index k = 1; k <= L_; ++k) f_[static_cast<std::size_t>(k)] = up[static_cast<std::size_t>(k - 1)];
    }

    pre_.assign(static_cast<std::size_t>(L_ + 1), 0.0);
    for (Index k = 1; k <= L_; ++k)
      pre_[static_cast<std::size_t>(k)] = pre_[static_cast<std::size_t>(k - 1)] + f_[static_cast<std::size_t>(k)];

    harm_.assign(static_cast<std::size_t>(L_ + 2), 0.0);
    tele_.assign(static_cast<std::size_t>(L_ + 2), 0.0);
    shift_.assign(static_cast<std::size_t>(L_ + 2), 0.0);
    for (Index k = L_; k >= 1; --k) {
      const auto i = static_cast<std::size_t>(k);
      const double dk = static_cast<double>(k);
      harm_[i] = harm_[i + 1] + f_[i] / dk;
      tele_[i] = tele_[i + 1] + f_[i] / (dk * (dk + 1.0));
      shift_[i] = shift_[i + 1] + f_[i] / (dk + 1.0);
    }
  }

  bool power_ = false;
  bool zero_ = false;
  double a_ = 0.0;
  std::shared_ptr<const special::PowerPrefixSum> psum_;

  Index L_ = 0;
  double tail_ = 0.0;
  std::vector<double> f_, pre_, harm_, tele_, shift_;
};

}  // namespace ccnorm
