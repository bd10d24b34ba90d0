#pragma once

// The register machine underlying the enumeration phi_0, phi_1, ...
//
// Registers hold arbitrary naturals and start at zero.  Unary functions take
// their argument in register 0; the output is read from register 0 when the
// machine halts.  Binary functions take a single Cantor-paired argument.
//
// The instruction core is INC / DECJZ / HALT.  Four structured-data
// instructions (PAIR, UNL, UNR, JLT) and two shifts (DBL, HLF) extend the
// core so that a universal interpreter, s-m-n and the recursion-theorem
// constructions run within desk-scale step budgets; with unary arithmetic
// alone, self-interpretation has exponential overhead.  The index coding in
// coding.hpp keeps the three-instruction core as its own densely enumerated
// fragment.
//
// Concurrency: programs, budgets and outcomes are immutable values and may be
// handed between threads once constructed.  A single Execution is not
// shareable; run independent executions for parallel searches and merge
// results in deterministic discovery order.

#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ink/nat.hpp"

namespace ink {

enum class Op : uint8_t {
  Halt = 0,
  Inc = 1,
  DecJz = 2,
  Pair = 3,
  UnL = 4,
  UnR = 5,
  JLt = 6,
  Dbl = 7,
  Hlf = 8,
};

inline constexpr uint32_t kMaxRegisters = 1u << 20;
inline constexpr uint64_t kMaxProgramLen = 1u << 22;

struct Instr {
  Op op = Op::Halt;
  uint32_t a = 0;  // INC r | DECJZ r | PAIR d | UNL/UNR/DBL/HLF d | JLT r
  uint32_t b = 0;  // DECJZ target | PAIR s | UNL/UNR/DBL/HLF s | JLT s
  uint32_t c = 0;  // PAIR t | JLT target

  static Instr halt() { return {}; }
  static Instr inc(uint32_t r) { return {Op::Inc, r, 0, 0}; }
  static Instr decjz(uint32_t r, uint32_t target) {
    return {Op::DecJz, r, target, 0};
  }
  static Instr pair(uint32_t d, uint32_t s, uint32_t t) {
    return {Op::Pair, d, s, t};
  }
  static Instr unl(uint32_t d, uint32_t s) { return {Op::UnL, d, s, 0}; }
  static Instr unr(uint32_t d, uint32_t s) { return {Op::UnR, d, s, 0}; }
  static Instr jlt(uint32_t r, uint32_t s, uint32_t target) {
    return {Op::JLt, r, s, target};
  }
  static Instr dbl(uint32_t d, uint32_t s) { return {Op::Dbl, d, s, 0}; }
  static Instr hlf(uint32_t d, uint32_t s) { return {Op::Hlf, d, s, 0}; }

  bool operator==(const Instr&) const = default;
};

// A validated instruction sequence.  Invariants:
//   * every jump target lies in [0, size()]; target == size() means
//     "fall off the end", which halts;
//   * every register index is below register_count(), which is declared as
//     1 + the largest register referenced (at least 1).
class Program {
public:
  Program() { finish(); }

  explicit Program(std::vector<Instr> code) : code_(std::move(code)) {
    if (code_.size() > kMaxProgramLen)
      throw std::invalid_argument("Program: too many instructions");
    for (const Instr& i : code_) {
      switch (i.op) {
        case Op::Halt:
          break;
        case Op::Inc:
          check_reg(i.a);
          break;
        case Op::DecJz:
          check_reg(i.a);
          check_target(i.b);
          break;
        case Op::Pair:
          check_reg(i.a);
          check_reg(i.b);
          check_reg(i.c);
          break;
        case Op::UnL:
        case Op::UnR:
        case Op::Dbl:
        case Op::Hlf:
          check_reg(i.a);
          check_reg(i.b);
          break;
        case Op::JLt:
          check_reg(i.a);
          check_reg(i.b);
          check_target(i.c);
          break;
      }
    }
    finish();
  }

  size_t size() const { return code_.size(); }
  bool empty() const { return code_.empty(); }
  const Instr& at(size_t i) const { return code_[i]; }
  const std::vector<Instr>& instructions() const { return code_; }
  uint32_t register_count() const { return register_count_; }

  // True when only the HALT/INC/DECJZ core is used.
  bool core_only() const { return core_only_; }

  bool operator==(const Program& o) const { return code_ == o.code_; }

  // ---- line-based text format ----------------------------------------------

  std::string to_text() const {
    std::ostringstream os;
    for (const Instr& i : code_) os << instr_text(i) << '\n';
    return os.str();
  }

  static Program parse_text(const std::string& text) {
    std::vector<Instr> code;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
      std::istringstream ls(line);
      std::string kw;
      if (!(ls >> kw)) continue;  // blank line
      if (!kw.empty() && kw[0] == '#') continue;
      code.push_back(parse_instr_line(kw, ls, line));
    }
    return Program(std::move(code));
  }

  // ---- canonical s-expression ------------------------------------------------

  std::string to_sexpr() const {
    std::string out = "(program";
    for (const Instr& i : code_) {
      out += ' ';
      out += instr_sexpr(i);
    }
    out += ')';
    return out;
  }

  static Program parse_sexpr(const std::string& text);

private:
  static void check_reg(uint32_t r) {
    if (r >= kMaxRegisters)
      throw std::invalid_argument("Program: register index out of range");
  }
  void check_target(uint32_t t) const {
    if (t > code_.size())
      throw std::invalid_argument("Program: jump target out of range");
  }

  void finish() {
    uint32_t max_reg = 0;
    core_only_ = true;
    for (const Instr& i : code_) {
      switch (i.op) {
        case Op::Halt:
          break;
        case Op::Inc:
        case Op::DecJz:
          max_reg = std::max(max_reg, i.a);
          break;
        case Op::Pair:
          max_reg = std::max({max_reg, i.a, i.b, i.c});
          core_only_ = false;
          break;
        case Op::UnL:
        case Op::UnR:
        case Op::Dbl:
        case Op::Hlf:
        case Op::JLt:
          max_reg = std::max({max_reg, i.a, i.b});
          core_only_ = false;
          break;
      }
    }
    register_count_ = max_reg + 1;
  }

  static std::string instr_text(const Instr& i) {
    switch (i.op) {
      case Op::Halt:
        return "HALT";
      case Op::Inc:
        return "INC " + std::to_string(i.a);
      case Op::DecJz:
        return "DECJZ " + std::to_string(i.a) + " " + std::to_string(i.b);
      case Op::Pair:
        return "PAIR " + std::to_string(i.a) + " " + std::to_string(i.b) +
               " " + std::to_string(i.c);
      case Op::UnL:
        return "UNL " + std::to_string(i.a) + " " + std::to_string(i.b);
      case Op::UnR:
        return "UNR " + std::to_string(i.a) + " " + std::to_string(i.b);
      case Op::JLt:
        return "JLT " + std::to_string(i.a) + " " + std::to_string(i.b) +
               " " + std::to_string(i.c);
      case Op::Dbl:
        return "DBL " + std::to_string(i.a) + " " + std::to_string(i.b);
      case Op::Hlf:
        return "HLF " + std::to_string(i.a) + " " + std::to_string(i.b);
    }
    return {};
  }

  static std::string instr_sexpr(const Instr& i) {
    std::string t = instr_text(i);
    for (char& c : t) c = c == ' ' ? ' ' : static_cast<char>(std::tolower(c));
    return "(" + t + ")";
  }

  static Instr parse_instr_line(std::string kw, std::istringstream& ls,
                                const std::string& line) {
    for (char& c : kw) c = static_cast<char>(std::toupper(c));
    auto field = [&](const char* what) -> uint32_t {
      long long v;
      if (!(ls >> v) || v < 0 || v > static_cast<long long>(UINT32_MAX))
        throw std::invalid_argument(std::string("Program: bad ") + what +
                                    " in line: " + line);
      return static_cast<uint32_t>(v);
    };
    if (kw == "HALT") return Instr::halt();
    if (kw == "INC") return Instr::inc(field("register"));
    if (kw == "DECJZ") {
      uint32_t r = field("register");
      return Instr::decjz(r, field("target"));
    }
    if (kw == "PAIR") {
      uint32_t d = field("register"), s = field("register");
      return Instr::pair(d, s, field("register"));
    }
    if (kw == "UNL") {
      uint32_t d = field("register");
      return Instr::unl(d, field("register"));
    }
    if (kw == "UNR") {
      uint32_t d = field("register");
      return Instr::unr(d, field("register"));
    }
    if (kw == "JLT") {
      uint32_t r = field("register"), s = field("register");
      return Instr::jlt(r, s, field("target"));
    }
    if (kw == "DBL") {
      uint32_t d = field("register");
      return Instr::dbl(d, field("register"));
    }
    if (kw == "HLF") {
      uint32_t d = field("register");
      return Instr::hlf(d, field("register"));
    }
    throw std::invalid_argument("Program: unknown instruction: " + line);
  }

  std::vector<Instr> code_;
  uint32_t register_count_ = 1;
  bool core_only_ = true;
};

inline Program Program::parse_sexpr(const std::string& text) {
  // (program (inc 0) (decjz 0 2) ...) -- whitespace-insensitive.
  std::string flat;
  flat.reserve(text.size());
  for (char c : text) flat += (c == '(' || c == ')') ? ' ' : c;
  std::istringstream is(flat);
  std::string kw;
  if (!(is >> kw) || kw != "program")
    throw std::invalid_argument("Program: expected (program ...)");
  std::string lines, tok;
  std::vector<std::string> toks;
  while (is >> tok) toks.push_back(tok);
  static const std::unordered_set<std::string> kws = {
      "halt", "inc", "decjz", "pair", "unl", "unr", "jlt", "dbl", "hlf"};
  std::string text_lines;
  for (size_t i = 0; i < toks.size(); ++i) {
    if (kws.count(toks[i])) {
      if (i) text_lines += '\n';
      text_lines += toks[i];
    } else {
      text_lines += ' ';
      text_lines += toks[i];
    }
  }
  return parse_text(text_lines);
}

// Per-operation search limits.  step_limit bounds a single evaluation,
// index_limit bounds enumeration over program indices, enum_limit bounds the
// number of items drawn from a theorem enumerator.
struct SearchBudget {
  uint64_t step_limit = 100000;
  uint64_t index_limit = 2000;
  uint64_t enum_limit = 200;

  SearchBudget() = default;
  SearchBudget(uint64_t steps, uint64_t indices, uint64_t items)
      : step_limit(steps), index_limit(indices), enum_limit(items) {
    if (steps < 1 || indices < 1 || items < 1)
      throw std::invalid_argument("SearchBudget: limits must be >= 1");
  }
};

// Halted(value) | Exhausted(steps used).  A Halted outcome is stable: larger
// budgets return the same value.
struct EvalOutcome {
  bool halted = false;
  Nat value;            // meaningful when halted
  uint64_t steps = 0;   // instructions executed

  static EvalOutcome halted_with(Nat v, uint64_t steps) {
    return {true, std::move(v), steps};
  }
  static EvalOutcome exhausted(uint64_t steps) { return {false, Nat(), steps}; }
};

// A resumable single program run.
class Execution {
public:
  Execution(const Program& p, Nat arg)
      : prog_(&p), regs_(p.register_count()) {
    regs_[0] = std::move(arg);
  }

  Execution(const Program& p, std::vector<Nat> args)
      : prog_(&p),
        regs_(std::max<size_t>(p.register_count(), args.size())) {
    for (size_t i = 0; i < args.size(); ++i) regs_[i] = std::move(args[i]);
  }

  bool halted() const { return ip_ >= prog_->size(); }
  uint64_t steps() const { return steps_; }
  const Nat& output() const { return regs_[0]; }
  size_t ip() const { return ip_; }
  const std::vector<Nat>& registers() const { return regs_; }

  // Executes one instruction; no-op once halted.
  void step() {
    if (halted()) return;
    const Instr& i = prog_->at(ip_);
    ++steps_;
    switch (i.op) {
      case Op::Halt:
        ip_ = prog_->size();
        return;
      case Op::Inc:
        regs_[i.a] = regs_[i.a].inc();
        break;
      case Op::DecJz:
        if (regs_[i.a].is_zero()) {
          ip_ = i.b;
          return;
        }
        regs_[i.a] = regs_[i.a].dec();
        break;
      case Op::Pair:
        regs_[i.a] = Nat::pair(regs_[i.b], regs_[i.c]);
        break;
      case Op::UnL:
        regs_[i.a] = regs_[i.b].unpair_left();
        break;
      case Op::UnR:
        regs_[i.a] = regs_[i.b].unpair_right();
        break;
      case Op::JLt:
        if (regs_[i.a] < regs_[i.b]) {
          ip_ = i.c;
          return;
        }
        break;
      case Op::Dbl:
        regs_[i.a] = regs_[i.b].dbl();
        break;
      case Op::Hlf:
        regs_[i.a] = regs_[i.b].half();
        break;
    }
    ++ip_;
  }

  // Runs until halt or until `limit` further instructions have executed.
  EvalOutcome run(uint64_t limit) {
    uint64_t end = steps_ + limit;
    while (!halted() && steps_ < end) step();
    if (halted()) return EvalOutcome::halted_with(regs_[0], steps_);
    return EvalOutcome::exhausted(steps_);
  }

private:
  const Program* prog_;
  std::vector<Nat> regs_;
  size_t ip_ = 0;
  uint64_t steps_ = 0;
};

inline EvalOutcome run_program(const Program& p, const Nat& arg,
                               uint64_t step_limit) {
  Execution e(p, arg);
  return e.run(step_limit);
}

}  // namespace ink
