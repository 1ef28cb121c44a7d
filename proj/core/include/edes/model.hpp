#ifndef EDES_MODEL_HPP
#define EDES_MODEL_HPP

namespace edes {

enum class Nonlinearity { AbsPow, SignedPow, None };
enum class StartKind { SingularAtZero, CauchyAtOne };

// Parameters of one experiment with u_tt - t^(-2k) A u = coupling * t^(1-p) N(u).
struct ModelParams {
  int n = 1;
  double k = 2.0 / 3.0;
  double p = 2.0;
  Nonlinearity nonlinearity = Nonlinearity::AbsPow;
  double coupling = 1.0;
  double horizon = 10.0;
  StartKind start = StartKind::CauchyAtOne;
  double epsilon = 1e-3;   // start time of the weighted problem
  double cfl = 0.9;
  double blowup_cap = 0.0;  // 0: auto, 1e8 * (initial max-norm + 1)
  int output_stride = 8;    // steps between trace samples

  double start_time() const { return start == StartKind::SingularAtZero ? epsilon : 1.0; }

  /// Throws std::invalid_argument when out of the documented ranges; snaps k
  /// to exactly 2/3 for the weighted start.
  void validate();
};

}  // namespace edes

#endif
