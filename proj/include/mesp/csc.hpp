#pragma once

// Constrained Set Cover: pick exactly one candidate from every group so that
// the picked satisfaction sets cover all requirements.
//
// Solved by a dynamic program over requirement subsets. Layer i maps every
// subset Q to the first candidate c of group i such that Q is covered by
// Psi(c) together with some choice from groups 1..i-1, or to "unreachable".
// Layers are downward closed, which lets reconstruction query the shrinking
// remainder R \ (Psi(s_{i+1}) u ... u Psi(s_m)) one layer at a time.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "mesp/errors.hpp"

namespace mesp {

using RequirementMask = std::uint32_t;

inline constexpr int kMaxCscRequirements = 30;
inline constexpr int kDefaultCscRequirementCap = 26;

struct CscCandidate {
  std::size_t payload = 0;  // opaque id for the caller
  RequirementMask satisfies = 0;
};

struct CscInstance {
  int requirements = 0;
  std::vector<std::vector<CscCandidate>> groups;

  RequirementMask universe() const {
    return requirements == 0 ? 0u : static_cast<RequirementMask>((std::uint64_t{1} << requirements) - 1);
  }
};

struct CscSolution {
  std::vector<std::size_t> selection;  // candidate index within each group

  friend bool operator==(const CscSolution&, const CscSolution&) = default;
};

inline bool covers(const CscInstance& inst, const CscSolution& sol, RequirementMask target) {
  if (sol.selection.size() != inst.groups.size()) return false;
  RequirementMask got = 0;
  for (std::size_t i = 0; i < inst.groups.size(); ++i) {
    if (sol.selection[i] >= inst.groups[i].size()) return false;
    got |= inst.groups[i][sol.selection[i]].satisfies;
  }
  return (got & target) == target;
}

inline bool covers(const CscInstance& inst, const CscSolution& sol) {
  return covers(inst, sol, inst.universe());
}

class CscTable {
 public:
  static constexpr std::int32_t kUnreachable = -1;
  static constexpr std::int32_t kBase = -2;  // layer 0, empty subset

  explicit CscTable(const CscInstance& inst, int requirement_cap = kDefaultCscRequirementCap)
      : instance_(&inst) {
    if (inst.requirements < 0) throw DomainError("negative requirement count");
    if (inst.requirements > requirement_cap || inst.requirements > kMaxCscRequirements) {
      throw CapacityError("constrained set cover with " + std::to_string(inst.requirements) +
                          " requirements exceeds the cap of " + std::to_string(requirement_cap));
    }
    const RequirementMask full = inst.universe();
    for (const auto& group : inst.groups) {
      for (const auto& c : group) {
        if ((c.satisfies & ~full) != 0) throw DomainError("satisfaction set outside the requirement universe");
      }
    }
    width_ = std::size_t{1} << inst.requirements;
    layers_.assign((inst.groups.size() + 1) * width_, kUnreachable);
    at(0, 0) = kBase;
    for (std::size_t i = 1; i <= inst.groups.size(); ++i) {
      if (!build_layer(i)) break;
    }
  }

  std::size_t layer_count() const { return instance_->groups.size() + 1; }

  std::int32_t witness(std::size_t layer, RequirementMask subset) const { return layers_[layer * width_ + subset]; }

  bool reachable(std::size_t layer, RequirementMask subset) const {
    return witness(layer, subset) != kUnreachable;
  }

  // Can the groups jointly cover `subset`?
  bool coverable(RequirementMask subset) const { return reachable(instance_->groups.size(), subset); }

  std::optional<CscSolution> reconstruct(RequirementMask subset) const {
    const auto m = instance_->groups.size();
    if (!coverable(subset)) return std::nullopt;
    CscSolution sol;
    sol.selection.assign(m, 0);
    RequirementMask remaining = subset;
    for (std::size_t i = m; i >= 1; --i) {
      const auto w = witness(i, remaining);
      sol.selection[i - 1] = static_cast<std::size_t>(w);
      remaining &= ~instance_->groups[i - 1][static_cast<std::size_t>(w)].satisfies;
    }
    return sol;
  }

  std::optional<CscSolution> reconstruct() const { return reconstruct(instance_->universe()); }

 private:
  std::int32_t& at(std::size_t layer, RequirementMask subset) { return layers_[layer * width_ + subset]; }

  bool build_layer(std::size_t i) {
    const auto& group = instance_->groups[i - 1];
    bool any = false;
    for (std::size_t c = 0; c < group.size(); ++c) {
      const RequirementMask psi = group[c].satisfies;
      for (RequirementMask k = 0; k < width_; ++k) {
        if (witness(i - 1, k) == kUnreachable) continue;
        auto& cell = at(i, k | psi);
        if (cell == kUnreachable) cell = static_cast<std::int32_t>(c);
        any = true;
      }
    }
    if (!any) return false;
    // Downward closure keeping the smallest candidate index: a subset is
    // covered by candidate c iff one of its supersets was marked by c.
    const int r = instance_->requirements;
    for (int bit = 0; bit < r; ++bit) {
      const RequirementMask b = RequirementMask{1} << bit;
      for (RequirementMask q = 0; q < width_; ++q) {
        if ((q & b) != 0) continue;
        const auto above = witness(i, q | b);
        if (above == kUnreachable) continue;
        auto& cell = at(i, q);
        if (cell == kUnreachable || above < cell) cell = above;
      }
    }
    return true;
  }

  const CscInstance* instance_;
  std::size_t width_ = 1;
  std::vector<std::int32_t> layers_;
};

inline std::optional<CscSolution> solve_csc(const CscInstance& inst,
                                            int requirement_cap = kDefaultCscRequirementCap) {
  for (const auto& group : inst.groups) {
    if (group.empty()) return std::nullopt;
  }
  return CscTable(inst, requirement_cap).reconstruct();
}

// Exhaustive search over all candidate tuples, in lexicographic order.
inline std::optional<CscSolution> solve_csc_bruteforce(const CscInstance& inst,
                                                       std::uint64_t tuple_cap = std::uint64_t{1} << 24) {
  std::uint64_t tuples = 1;
  for (const auto& group : inst.groups) {
    if (group.empty()) return std::nullopt;
    tuples *= group.size();
    if (tuples > tuple_cap) throw CapacityError("brute-force set cover tuple count exceeds cap");
  }
  const auto m = inst.groups.size();
  const RequirementMask full = inst.universe();
  CscSolution sol;
  sol.selection.assign(m, 0);
  while (true) {
    RequirementMask got = 0;
    for (std::size_t i = 0; i < m; ++i) got |= inst.groups[i][sol.selection[i]].satisfies;
    if ((got & full) == full) return sol;
    std::size_t i = m;
    while (i > 0) {
      --i;
      if (++sol.selection[i] < inst.groups[i].size()) break;
      sol.selection[i] = 0;
      if (i == 0) return std::nullopt;
    }
    if (m == 0) return std::nullopt;
  }
}

// Debug text format: "r m", then for each group a line "g_i" followed by g_i
// lines of space-separated requirement indices (blank line = empty set).
// Payloads are the candidate's index within its group.
inline CscInstance read_csc_instance(std::istream& in) {
  auto next_line = [&](std::string& line, const char* what) {
    if (!std::getline(in, line)) throw FormatError(std::string("csc instance truncated: expected ") + what);
    if (!line.empty() && line.back() == '\r') line.pop_back();
  };
  std::string line;
  do {
    next_line(line, "header");
  } while (line.find_first_not_of(" \t") == std::string::npos || line[line.find_first_not_of(" \t")] == '#');
  std::istringstream header(line);
  long long r = -1;
  long long m = -1;
  if (!(header >> r >> m) || r < 0 || m < 0) throw FormatError("csc header must be 'r m'");
  if (r > kMaxCscRequirements) throw CapacityError("csc instance has too many requirements");
  CscInstance inst;
  inst.requirements = static_cast<int>(r);
  inst.groups.resize(static_cast<std::size_t>(m));
  for (auto& group : inst.groups) {
    next_line(line, "group size");
    std::istringstream gs(line);
    long long size = -1;
    if (!(gs >> size) || size < 0) throw FormatError("bad group size line '" + line + "'");
    for (long long c = 0; c < size; ++c) {
      next_line(line, "candidate");
      std::istringstream cs(line);
      CscCandidate cand;
      cand.payload = static_cast<std::size_t>(c);
      long long req = 0;
      while (cs >> req) {
        if (req < 0 || req >= r) throw FormatError("requirement index out of range in '" + line + "'");
        cand.satisfies |= RequirementMask{1} << req;
      }
      if (!cs.eof()) throw FormatError("bad candidate line '" + line + "'");
      group.push_back(cand);
    }
  }
  return inst;
}

inline void write_csc_instance(std::ostream& out, const CscInstance& inst) {
  out << inst.requirements << ' ' << inst.groups.size() << '\n';
  for (const auto& group : inst.groups) {
    out << group.size() << '\n';
    for (const auto& c : group) {
      bool first = true;
      for (int b = 0; b < inst.requirements; ++b) {
        if ((c.satisfies >> b) & 1u) {
          out << (first ? "" : " ") << b;
          first = false;
        }
      }
      out << '\n';
    }
  }
}

}  // namespace mesp
