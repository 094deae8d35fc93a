#ifndef MOMROB_LOSSES_HPP_
#define MOMROB_LOSSES_HPP_

#include <string>
#include <string_view>

namespace momrob {

enum class LossKind { ZeroOne, Hinge, Logistic };

// Both surrogates are convex and 1-Lipschitz in the score.
inline constexpr double kSurrogateLipschitz = 1.0;

// Above this value of -y*score the logistic loss is evaluated as
// -y*score + log1p(exp(y*score)).
inline constexpr double kLogisticOverflowThreshold = 35.0;

/// Loss of a real-valued score against a label in {-1, +1}.
/// ZeroOne uses sign(0) = +1.
double loss_value(LossKind kind, double score, int y);

/// d loss / d score. Hinge uses subgradient 0 at the kink y*score = 1.
/// Throws UnsupportedOperation for ZeroOne.
double loss_grad_score(LossKind kind, double score, int y);

/// Accepts "zero-one", "hinge", "logistic".
LossKind parse_loss_kind(std::string_view text);
std::string to_string(LossKind kind);

inline int sign_label(double score) { return score >= 0.0 ? 1 : -1; }

}  // namespace momrob

#endif  // MOMROB_LOSSES_HPP_
