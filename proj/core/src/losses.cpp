#include "momrob/losses.hpp"

#include <cmath>

#include "momrob/error.hpp"

namespace momrob {

namespace {

void check_inputs(double score, int y) {
  if (!std::isfinite(score)) throw NumericError("loss: non-finite score");
  if (y != 1 && y != -1) throw ArgumentError("loss: label must be -1 or +1");
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

double loss_value(LossKind kind, double score, int y) {
  check_inputs(score, y);
  const double margin = y * score;
  switch (kind) {
    case LossKind::ZeroOne:
      return sign_label(score) == y ? 0.0 : 1.0;
    case LossKind::Hinge:
      return margin < 1.0 ? 1.0 - margin : 0.0;
    case LossKind::Logistic:
      if (-margin > kLogisticOverflowThreshold) return -margin + std::log1p(std::exp(margin));
      return std::log1p(std::exp(-margin));
  }
  throw UnsupportedOperation("loss_value: unknown loss kind");
}

double loss_grad_score(LossKind kind, double score, int y) {
  check_inputs(score, y);
  const double margin = y * score;
  switch (kind) {
    case LossKind::ZeroOne:
      throw UnsupportedOperation("zero-one loss has no gradient");
    case LossKind::Hinge:
      return margin < 1.0 ? -static_cast<double>(y) : 0.0;
    case LossKind::Logistic:
      return -y * sigmoid(-margin);
  }
  throw UnsupportedOperation("loss_grad_score: unknown loss kind");
}

LossKind parse_loss_kind(std::string_view text) {
  if (text == "zero-one") return LossKind::ZeroOne;
  if (text == "hinge") return LossKind::Hinge;
  if (text == "logistic") return LossKind::Logistic;
  throw ArgumentError("unknown loss '" + std::string(text) +
                      "' (expected zero-one, hinge or logistic)");
}

std::string to_string(LossKind kind) {
  switch (kind) {
    case LossKind::ZeroOne: return "zero-one";
    case LossKind::Hinge: return "hinge";
    case LossKind::Logistic: return "logistic";
  }
  return "?";
}

}  // namespace momrob
