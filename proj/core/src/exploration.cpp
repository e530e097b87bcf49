#include "fca/exploration.hpp"

#include "fca/context_io.hpp"

namespace fca {
namespace {

constexpr int kSessionVersion = 1;

std::string_view phase_name(Phase p) { return p == Phase::Done ? "done" : "awaiting_expert"; }

Phase parse_phase(const std::string& s) {
  if (s == "done") return Phase::Done;
  if (s == "awaiting_expert") return Phase::AwaitingExpert;
  throw ParseError(0, "unknown session phase '" + s + "'");
}

nlohmann::json implication_json(const Implication& imp) {
  return {{"premise", imp.premise().indices()}, {"conclusion", imp.conclusion().indices()}};
}

Implication implication_from(const nlohmann::json& j, std::size_t width) {
  return Implication(AttributeSet::from_indices(width, j.at("premise").get<std::vector<std::size_t>>()),
                     AttributeSet::from_indices(width, j.at("conclusion").get<std::vector<std::size_t>>()));
}

}  // namespace

std::string_view to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::SessionDone:
      return "session_done";
    case RejectReason::DoesNotViolate:
      return "does_not_violate";
    case RejectReason::ViolatesAccepted:
      return "violates_accepted";
    case RejectReason::DuplicateName:
      return "duplicate_name";
    case RejectReason::WidthMismatch:
      return "width_mismatch";
  }
  return "unknown";
}

ExplorationSession::ExplorationSession(std::vector<std::string> attributes)
    : ExplorationSession(FormalContext::empty(std::move(attributes))) {}

ExplorationSession::ExplorationSession(FormalContext initial)
    : working_(std::move(initial)),
      accepted_(working_.num_attributes()),
      cursor_(working_.num_attributes()) {
  advance();
}

void ExplorationSession::advance() {
  const AttributeSet all = working_.all_attributes();
  const ImplicationClosure op(accepted_);
  for (;;) {
    if (cursor_ == all) break;
    auto closed = working_.close_attrs(cursor_);
    if (closed != cursor_) {
      phase_ = Phase::AwaitingExpert;
      question_ = Implication(cursor_, std::move(closed));
      return;
    }
    auto next = next_closure(cursor_, op);
    if (!next) break;
    cursor_ = std::move(*next);
  }
  phase_ = Phase::Done;
  question_.reset();
}

std::optional<AnswerRejected> ExplorationSession::validate(const Counterexample& cex) const {
  if (done()) return AnswerRejected(RejectReason::SessionDone, "exploration is already finished");
  if (cex.attrs.width() != working_.num_attributes())
    return AnswerRejected(RejectReason::WidthMismatch, "counterexample has the wrong number of attributes");
  if (!question_->violated_by(cex.attrs))
    return AnswerRejected(RejectReason::DoesNotViolate,
                          "'" + cex.name + "' does not violate " + render(*question_));
  for (const auto& imp : accepted_)
    if (imp.violated_by(cex.attrs))
      return AnswerRejected(RejectReason::ViolatesAccepted,
                            "'" + cex.name + "' violates accepted implication " + render(imp));
  if (working_.find_object(cex.name))
    return AnswerRejected(RejectReason::DuplicateName, "object '" + cex.name + "' is already in the context");
  return std::nullopt;
}

void ExplorationSession::answer(const ExpertAnswer& ans) {
  if (done()) throw AnswerRejected(RejectReason::SessionDone, "exploration is already finished");
  const Implication question = *question_;
  if (const auto* cex = std::get_if<Counterexample>(&ans)) {
    if (auto rejected = validate(*cex)) throw *rejected;
    working_ = working_.with_object(cex->name, cex->attrs);
  } else {
    accepted_.add(question);
    auto next = next_closure(cursor_, ImplicationClosure(accepted_));
    if (next) {
      cursor_ = std::move(*next);
    } else {
      cursor_ = working_.all_attributes();
    }
  }
  transcript_.push_back({question, ans});
  advance();
}

std::string ExplorationSession::render(const Implication& question) const {
  const auto& names = working_.attribute_names();
  std::string out = format_attributes(question.premise(), names);
  if (!out.empty()) out += ' ';
  out += "=>";
  const auto rhs = format_attributes(question.conclusion(), names);
  if (!rhs.empty()) out += ' ' + rhs;
  return out;
}

ExplorationSession ExplorationSession::restore(FormalContext working, ImplicationSet accepted, AttributeSet cursor,
                                               Phase phase, std::vector<TranscriptEntry> transcript) {
  const std::size_t n = working.num_attributes();
  if (accepted.width() != n || cursor.width() != n) throw ParseError(0, "session parts have inconsistent widths");
  for (const auto& imp : accepted)
    if (!holds(working, imp)) throw ParseError(0, "accepted implication does not hold in the working context");
  ExplorationSession s;
  s.working_ = std::move(working);
  s.accepted_ = std::move(accepted);
  s.cursor_ = std::move(cursor);
  s.transcript_ = std::move(transcript);
  s.phase_ = phase;
  if (phase == Phase::AwaitingExpert) {
    auto closed = s.working_.close_attrs(s.cursor_);
    if (closed == s.cursor_) throw ParseError(0, "session cursor has no pending question");
    s.question_ = Implication(s.cursor_, std::move(closed));
  }
  return s;
}

ExplorationSession new_session(std::vector<std::string> attributes, const std::optional<FormalContext>& initial) {
  if (!initial) return ExplorationSession(std::move(attributes));
  if (initial->attribute_names() != attributes)
    throw NamingError("initial context attributes do not match the exploration attributes");
  return ExplorationSession(*initial);
}

OracleResult run_with_oracle(ExplorationSession& session, const FormalContext& hidden) {
  const auto& working = session.working_context();
  if (hidden.attribute_names() != working.attribute_names())
    throw Error("hidden context has a different attribute list");
  for (std::size_t g = 0; g < working.num_objects(); ++g) {
    const auto idx = hidden.find_object(working.object_names()[g]);
    if (!idx || hidden.row(*idx) != working.row(g))
      throw Error("example '" + working.object_names()[g] + "' contradicts the hidden context");
  }
  while (!session.done()) {
    const Implication& q = *session.current_question();
    if (auto g = first_violator(hidden, q))
      session.answer(Counterexample{hidden.object_names()[*g], hidden.row(*g)});
    else
      session.answer(Accept{});
  }
  return {session.accepted(), session.working_context()};
}

nlohmann::json session_to_json(const ExplorationSession& s) {
  nlohmann::json transcript = nlohmann::json::array();
  for (const auto& e : s.transcript()) {
    nlohmann::json entry{{"question", implication_json(e.question)}};
    if (const auto* cex = std::get_if<Counterexample>(&e.answer))
      entry["answer"] = {{"counterexample", {{"name", cex->name}, {"attrs", cex->attrs.indices()}}}};
    else
      entry["answer"] = "accept";
    transcript.push_back(std::move(entry));
  }
  return {{"version", kSessionVersion},
          {"attributes", s.attribute_names()},
          {"working", context_to_json(s.working_context())},
          {"accepted", implications_to_json(s.accepted())},
          {"cursor", s.cursor().indices()},
          {"phase", phase_name(s.phase())},
          {"transcript", std::move(transcript)}};
}

ExplorationSession session_from_json(const nlohmann::json& j) {
  try {
    if (!j.is_object()) throw ParseError(0, "session payload is not an object");
    const int version = j.at("version").get<int>();
    if (version != kSessionVersion)
      throw ParseError(0, "unsupported session version " + std::to_string(version) + " (expected " +
                              std::to_string(kSessionVersion) + ")");
    auto working = context_from_json(j.at("working"));
    if (j.at("attributes").get<std::vector<std::string>>() != working.attribute_names())
      throw ParseError(0, "session attributes do not match the working context");
    const std::size_t n = working.num_attributes();
    auto accepted = implications_from_json(j.at("accepted"), n);
    auto cursor = AttributeSet::from_indices(n, j.at("cursor").get<std::vector<std::size_t>>());
    auto phase = parse_phase(j.at("phase").get<std::string>());
    std::vector<TranscriptEntry> transcript;
    for (const auto& e : j.at("transcript")) {
      auto question = implication_from(e.at("question"), n);
      const auto& a = e.at("answer");
      if (a.is_string() && a.get<std::string>() == "accept") {
        transcript.push_back({std::move(question), Accept{}});
      } else {
        const auto& c = a.at("counterexample");
        transcript.push_back({std::move(question),
                              Counterexample{c.at("name").get<std::string>(),
                                             AttributeSet::from_indices(n, c.at("attrs").get<std::vector<std::size_t>>())}});
      }
    }
    return ExplorationSession::restore(std::move(working), std::move(accepted), std::move(cursor), phase,
                                       std::move(transcript));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("corrupted session payload: ") + e.what());
  } catch (const DimensionError& e) {
    throw ParseError(0, std::string("corrupted session payload: ") + e.what());
  }
}

std::string save_session(const ExplorationSession& session) { return session_to_json(session).dump(2) + '\n'; }

ExplorationSession load_session(std::string_view payload) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(payload);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, std::string("corrupted session payload: ") + e.what());
  }
  return session_from_json(j);
}

}  // namespace fca
