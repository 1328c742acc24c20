#include "adicomp/verdict.hpp"

#include <algorithm>

namespace adicomp {

std::string_view to_string(Status s) {
  switch (s) {
  case Status::Holds: return "Holds";
  case Status::Fails: return "Fails";
  case Status::Unknown: return "Unknown";
  }
  return "?";
}

Verdict Verdict::holds(Evidence certificate, Budget b) {
  return {Status::Holds, std::move(certificate), b};
}

Verdict Verdict::fails(Evidence witness, Budget b) {
  return {Status::Fails, std::move(witness), b};
}

Verdict Verdict::unknown(std::string why, Budget b) {
  return {Status::Unknown, Evidence{"budget", std::move(why), {}, {}, {}}, b};
}

Verdict conjunction(const std::vector<Verdict> &parts, std::string kind) {
  Budget b;
  for (const auto &p : parts) {
    b.depth = std::max(b.depth, p.budget.depth);
    b.window = std::max(b.window, p.budget.window);
    b.stages = std::max(b.stages, p.budget.stages);
  }
  for (std::size_t i = 0; i < parts.size(); ++i)
    if (parts[i].fails()) {
      Evidence w = parts[i].evidence;
      w.detail = kind + " part " + std::to_string(i) + ": " + w.detail;
      return Verdict::fails(std::move(w), b);
    }
  for (std::size_t i = 0; i < parts.size(); ++i)
    if (!parts[i].decisive())
      return Verdict::unknown(kind + " part " + std::to_string(i) + ": " +
                                  parts[i].evidence.detail,
                              b);
  return Verdict::holds(Evidence{kind, "all " + std::to_string(parts.size()) + " parts hold",
                                 {}, {}, {}},
                        b);
}

std::string format_verdict(const Verdict &v) {
  std::string s(to_string(v.status));
  s += " [" + v.evidence.kind + "]";
  if (!v.evidence.element.empty()) {
    s += " (";
    for (std::size_t i = 0; i < v.evidence.element.size(); ++i)
      s += (i ? ", " : "") + v.evidence.element[i];
    s += ")";
  }
  if (v.evidence.degree) s += " degree " + std::to_string(*v.evidence.degree);
  if (v.evidence.stage) s += " stage " + std::to_string(*v.evidence.stage);
  if (!v.evidence.detail.empty()) s += ": " + v.evidence.detail;
  return s;
}

} // namespace adicomp
