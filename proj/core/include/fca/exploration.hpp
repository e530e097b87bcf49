#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fca/implications.hpp"

namespace fca {

/// The expert confirms the pending implication.
struct Accept {
  friend bool operator==(const Accept&, const Accept&) = default;
};

/// The expert names an object that violates the pending implication.
struct Counterexample {
  std::string name;
  AttributeSet attrs;

  friend bool operator==(const Counterexample&, const Counterexample&) = default;
};

using ExpertAnswer = std::variant<Accept, Counterexample>;

enum class Phase { AwaitingExpert, Done };

enum class RejectReason { SessionDone, DoesNotViolate, ViolatesAccepted, DuplicateName, WidthMismatch };

/// Machine-readable reason token, e.g. "does_not_violate".
std::string_view to_string(RejectReason reason);

/// An answer the session refused; the session is left unchanged.
class AnswerRejected : public Error {
 public:
  AnswerRejected(RejectReason reason, const std::string& message) : Error(message), reason_(reason) {}
  RejectReason reason() const noexcept { return reason_; }

 private:
  RejectReason reason_;
};

struct TranscriptEntry {
  Implication question;
  ExpertAnswer answer;

  friend bool operator==(const TranscriptEntry&, const TranscriptEntry&) = default;
};

/// Interactive attribute exploration.
///
/// The session keeps the example context built so far, the accepted
/// implications and the current candidate premise. While the premise is not
/// closed in the examples it asks whether premise -> closure holds. Accepting
/// records the implication and moves the premise to the next set closed under
/// the accepted implications; a counterexample is added to the examples and the
/// same premise is asked about again. When the premise reaches the full
/// attribute set, the accepted implications are the canonical base of the
/// expert's domain.
class ExplorationSession {
 public:
  /// Starts from no examples.
  explicit ExplorationSession(std::vector<std::string> attributes);
  /// Starts from an initial example context.
  explicit ExplorationSession(FormalContext initial);

  Phase phase() const noexcept { return phase_; }
  bool done() const noexcept { return phase_ == Phase::Done; }

  /// Pending question with the premise removed from the conclusion.
  const std::optional<Implication>& current_question() const noexcept { return question_; }

  /// Applies an answer. Throws AnswerRejected (state unchanged) on a done
  /// session, a counterexample that does not violate the question, one that
  /// violates an accepted implication, or a duplicate object name.
  void answer(const ExpertAnswer& answer);

  const FormalContext& working_context() const noexcept { return working_; }
  const ImplicationSet& accepted() const noexcept { return accepted_; }
  const AttributeSet& cursor() const noexcept { return cursor_; }
  const std::vector<TranscriptEntry>& transcript() const noexcept { return transcript_; }
  const std::vector<std::string>& attribute_names() const noexcept { return working_.attribute_names(); }

  /// Checks a counterexample without applying it.
  std::optional<AnswerRejected> validate(const Counterexample& cex) const;

  /// Renders a question the way the dialogue prints it: "a, b => c".
  std::string render(const Implication& question) const;

  /// Restores a session from saved parts; recomputes the pending question.
  static ExplorationSession restore(FormalContext working, ImplicationSet accepted, AttributeSet cursor, Phase phase,
                                    std::vector<TranscriptEntry> transcript);

  friend bool operator==(const ExplorationSession&, const ExplorationSession&) = default;

 private:
  ExplorationSession() = default;
  void advance();

  FormalContext working_;
  ImplicationSet accepted_;
  AttributeSet cursor_;
  Phase phase_ = Phase::AwaitingExpert;
  std::optional<Implication> question_;
  std::vector<TranscriptEntry> transcript_;
};

/// Session over `attributes`, optionally seeded with examples. Throws
/// NamingError if the examples use a different attribute list.
ExplorationSession new_session(std::vector<std::string> attributes, const std::optional<FormalContext>& initial = {});

struct OracleResult {
  ImplicationSet implications;
  FormalContext examples;
};

/// Answers every question from a fully known context: accept when the
/// implication holds there, otherwise offer the lowest-index violating object.
/// Throws Error if the session's examples disagree with `hidden`.
OracleResult run_with_oracle(ExplorationSession& session, const FormalContext& hidden);

std::string save_session(const ExplorationSession& session);
/// Throws ParseError on malformed or truncated payloads and version mismatches.
ExplorationSession load_session(std::string_view payload);

nlohmann::json session_to_json(const ExplorationSession& session);
ExplorationSession session_from_json(const nlohmann::json& j);

}  // namespace fca
