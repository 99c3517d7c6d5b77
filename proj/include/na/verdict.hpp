#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "na/matrix.hpp"

namespace na {

/// Witness backing an "attained" claim: a concrete vector (coordinates in the
/// producer's basis, or a sequence index) with verified residuals.
struct AttainedCertificate {
  std::vector<Complex> witness;
  std::optional<std::size_t> witness_index;
  double ratio = 0.0;     // achieved ||T h|| / ||h||
  double residual = 0.0;  // eigenpair / identity residual backing the claim
  std::string detail;
};

/// Evidence that the supremum is approached but never reached: a strict gap
/// measured over a validated prefix, relative to the declared limit.
struct NotAttainedCertificate {
  double sup = 0.0;
  double min_gap = 0.0;
  std::size_t prefix = 0;
  std::string detail;
};

struct InconclusiveEvidence {
  std::string detail;
};

/// Outcome of a norm-attainment decision, together with the operator norm the
/// decision refers to.
struct Verdict {
  double norm = 0.0;
  std::variant<AttainedCertificate, NotAttainedCertificate, InconclusiveEvidence> outcome;

  [[nodiscard]] bool attained() const {
    return std::holds_alternative<AttainedCertificate>(outcome);
  }
  [[nodiscard]] bool not_attained() const {
    return std::holds_alternative<NotAttainedCertificate>(outcome);
  }
  [[nodiscard]] bool inconclusive() const {
    return std::holds_alternative<InconclusiveEvidence>(outcome);
  }

  [[nodiscard]] const AttainedCertificate& certificate() const {
    if (!attained()) throw std::logic_error("Verdict: no attained certificate");
    return std::get<AttainedCertificate>(outcome);
  }
  [[nodiscard]] const NotAttainedCertificate& gap_certificate() const {
    if (!not_attained()) throw std::logic_error("Verdict: no not-attained certificate");
    return std::get<NotAttainedCertificate>(outcome);
  }
  [[nodiscard]] const InconclusiveEvidence& evidence() const {
    if (!inconclusive()) throw std::logic_error("Verdict: no inconclusive evidence");
    return std::get<InconclusiveEvidence>(outcome);
  }

  [[nodiscard]] std::string status() const {
    if (attained()) return "attained";
    if (not_attained()) return "not_attained";
    return "inconclusive";
  }
};

}  // namespace na
