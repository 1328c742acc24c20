#pragma once

// Three-valued decision results shared by every decision procedure.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace adicomp {

enum class Status { Holds, Fails, Unknown };

std::string_view to_string(Status s);

/// Budgets actually consumed by a procedure.
struct Budget {
  int depth = 0;
  int window = 0;
  int stages = 0;
};

/// Certificate (Holds), witness (Fails) or exhausted budget (Unknown).
struct Evidence {
  std::string kind;
  std::string detail;
  std::vector<std::string> element; // coefficient tuple when an element is involved
  std::optional<int> degree;
  std::optional<int> stage;
};

struct Verdict {
  Status status = Status::Unknown;
  Evidence evidence;
  Budget budget;

  static Verdict holds(Evidence certificate, Budget b = {});
  static Verdict fails(Evidence witness, Budget b = {});
  static Verdict unknown(std::string why, Budget b = {});

  [[nodiscard]] bool decisive() const { return status != Status::Unknown; }
  [[nodiscard]] bool holds() const { return status == Status::Holds; }
  [[nodiscard]] bool fails() const { return status == Status::Fails; }
};

/// Conjunction: Fails if any part fails (first failing witness), Holds if all
/// hold, Unknown otherwise. Budgets are maxed.
Verdict conjunction(const std::vector<Verdict> &parts, std::string kind);

std::string format_verdict(const Verdict &v);

} // namespace adicomp
