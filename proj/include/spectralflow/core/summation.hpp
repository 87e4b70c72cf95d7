#ifndef SPECTRALFLOW_CORE_SUMMATION_HPP
#define SPECTRALFLOW_CORE_SUMMATION_HPP

namespace spectralflow {

/// Neumaier-compensated accumulator. Sequential and deterministic: the
/// result depends only on the order terms are added, never on a parallel
/// schedule.
template <class Real>
class CompensatedSum {
 public:
  void add(Real x) {
    const Real t = sum_ + x;
    if (abs_(sum_) >= abs_(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  Real value() const { return sum_ + comp_; }

 private:
  static Real abs_(Real x) { return x < Real(0) ? -x : x; }
  Real sum_ = Real(0);
  Real comp_ = Real(0);
};

}  // namespace spectralflow

#endif
