#pragma once

#include <vector>

namespace photostat {

// sign * exp(logc) * T^m * exp(a T) * cos(b T + phi)
struct ExpTerm {
  double logc = 0.0;
  int sign = 1;
  int m = 0;
  double a = 0.0;
  double b = 0.0;
  double phi = 0.0;
};

// A finite sum of exponential-polynomial-trigonometric terms with exact
// term-wise differentiation in T.
class ExpSeries {
 public:
  void add(double c, int m, double a, double b = 0.0, double phi = 0.0);
  void add_log(double logc, int sign, int m, double a, double b = 0.0, double phi = 0.0);
  void append(const ExpSeries& o);

  double operator()(double T) const;
  // Sum of term magnitudes at T; ratio to |value| measures cancellation.
  double abs_sum(double T) const;
  ExpSeries derivative() const;

  const std::vector<ExpTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

 private:
  static double magnitude(const ExpTerm& t, double T);
  std::vector<ExpTerm> terms_;
};

}  // namespace photostat
