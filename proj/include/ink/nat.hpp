#pragma once

// Arbitrary-size natural numbers with structural (Cantor-pair) sharing.
//
// A Nat is an immutable value.  Word-sized values are stored inline with no
// heap traffic; larger values are DAG nodes holding either a GMP integer or a
// lazy Cantor pair of two other Nats.  The pair form lets the register
// machine treat deeply structured numbers (program codes, formula codes,
// computation histories) with O(1) pairing/unpairing, materialising the
// numeric value only when an operation genuinely needs it.
//
// Canonical-form invariant: a heap node always denotes a value > 2^64 - 1
// (small results collapse to inline words at construction), so inline words
// compare against heap nodes without materialising anything.

#include <cmath>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace ink {

class resource_limit_error : public std::runtime_error {
public:
  explicit resource_limit_error(const std::string& what)
      : std::runtime_error(what) {}
};

class Nat;

namespace detail {

// Values whose materialisation would exceed this many bits raise
// resource_limit_error instead of exhausting memory.  This is a host
// limitation, not part of the machine semantics; the shipped corpora stay
// far below it.
inline constexpr double kMaxMaterialBits = 1u << 26;  // 64 Mbit

struct NatRep;
using NatRepPtr = std::shared_ptr<const NatRep>;

inline uint64_t u64_isqrt(uint64_t n) {
  if (n == 0) return 0;
  auto r = static_cast<uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && (r > UINT64_MAX / r || r * r > n)) --r;
  while ((r + 1) <= UINT64_MAX / (r + 1) && (r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace detail

class Nat {
public:
  Nat() = default;
  Nat(uint64_t v) : w_(v) {}  // NOLINT: implicit by design
  explicit Nat(const mpz_class& v);
  explicit Nat(mpz_class&& v);

  static Nat from_decimal(const std::string& s);

  bool is_zero() const { return !rep_ && w_ == 0; }
  bool fits_u64() const { return !rep_; }
  uint64_t as_u64() const {
    if (rep_) throw std::overflow_error("Nat::as_u64: value too large");
    return w_;
  }

  // Upper/lower bounds on log2(value+1); exact enough for magnitude triage.
  double log2_hi() const;
  double log2_lo() const;

  const mpz_class& to_mpz() const;
  std::string to_decimal() const;

  bool odd() const;
  Nat inc() const;
  Nat dec() const;
  Nat dbl() const;
  Nat half() const;

  // Cantor pairing <a,b> = (a+b)(a+b+1)/2 + b.  O(1) for large operands.
  static Nat pair(const Nat& a, const Nat& b);

  // Total unpairing: pair(unpair(n).first, unpair(n).second) == n for every
  // natural (Cantor pairing is a bijection on N^2 <-> N).
  std::pair<Nat, Nat> unpair() const;
  Nat unpair_left() const { return unpair().first; }
  Nat unpair_right() const { return unpair().second; }

  int cmp(const Nat& o) const;
  bool operator==(const Nat& o) const;
  bool operator!=(const Nat& o) const { return !(*this == o); }
  bool operator<(const Nat& o) const { return cmp(o) < 0; }
  bool operator<=(const Nat& o) const { return cmp(o) <= 0; }
  bool operator>(const Nat& o) const { return cmp(o) > 0; }
  bool operator>=(const Nat& o) const { return cmp(o) >= 0; }

private:
  explicit Nat(detail::NatRepPtr rep) : rep_(std::move(rep)) {}
  static Nat from_big(mpz_class&& v);

  uint64_t w_ = 0;
  detail::NatRepPtr rep_;  // null <=> value is w_

  friend struct detail::NatRep;
};

namespace detail {

struct NatRep {
  enum class Kind : uint8_t { Mpz, Pair };

  Kind kind;
  std::shared_ptr<const mpz_class> mpz;  // Kind::Mpz seed, else numeric cache
  Nat left, right;                       // Kind::Pair seed
  // log2(value+1) bounds, usable without materialising.
  double lg_lo = 64.0;
  double lg_hi = 64.0;

  // Lazily filled caches.  The kernel is single-threaded by contract (see
  // machine.hpp); values may be handed to other threads once fully built.
  mutable std::shared_ptr<const mpz_class> num_cache;
  mutable Nat child_l, child_r;
  mutable bool children_cached = false;

  ~NatRep();
};

// Iterative teardown: long chains of pair nodes would otherwise recurse in
// shared_ptr destructors and overflow the stack.
inline thread_local std::vector<NatRepPtr>* g_teardown_queue = nullptr;

inline NatRep::~NatRep() {
  bool local_queue = g_teardown_queue == nullptr;
  std::vector<NatRepPtr> queue;
  if (local_queue) g_teardown_queue = &queue;
  // Members are Nats; move their reps into the queue instead of letting the
  // member destructors recurse (NatRep is a friend of Nat).
  Nat* members[] = {&left, &right, &child_l, &child_r};
  for (Nat* m : members)
    if (m->rep_) g_teardown_queue->push_back(std::move(m->rep_));
  if (local_queue) {
    while (!queue.empty()) {
      NatRepPtr p = std::move(queue.back());
      queue.pop_back();
      p.reset();
    }
    g_teardown_queue = nullptr;
  }
}

}  // namespace detail

// ---- construction ----------------------------------------------------------

inline Nat Nat::from_big(mpz_class&& v) {
  if (sgn(v) < 0) throw std::invalid_argument("Nat: negative value");
  if (mpz_sizeinbase(v.get_mpz_t(), 2) <= 64 &&
      mpz_fits_ulong_p(v.get_mpz_t())) {
    return Nat(static_cast<uint64_t>(v.get_ui()));
  }
  auto rep = std::make_shared<detail::NatRep>();
  rep->kind = detail::NatRep::Kind::Mpz;
  double bits = static_cast<double>(mpz_sizeinbase(v.get_mpz_t(), 2));
  rep->lg_lo = bits - 1;
  rep->lg_hi = bits;
  rep->mpz = std::make_shared<const mpz_class>(std::move(v));
  return Nat(std::move(rep));
}

inline Nat::Nat(const mpz_class& v) { *this = from_big(mpz_class(v)); }
inline Nat::Nat(mpz_class&& v) { *this = from_big(std::move(v)); }

inline Nat Nat::from_decimal(const std::string& s) {
  mpz_class v;
  if (s.empty() || mpz_set_str(v.get_mpz_t(), s.c_str(), 10) != 0 || sgn(v) < 0)
    throw std::invalid_argument("Nat::from_decimal: bad numeral: " + s);
  return from_big(std::move(v));
}

// ---- magnitude bounds -------------------------------------------------------

inline double Nat::log2_hi() const {
  if (!rep_) return std::log2(static_cast<double>(w_) + 1.0);
  return rep_->lg_hi;
}
inline double Nat::log2_lo() const {
  if (!rep_) return std::log2(static_cast<double>(w_) + 1.0);
  return rep_->lg_lo;
}

// ---- materialisation --------------------------------------------------------

// For word-sized values the returned reference points at a thread-local
// scratch slot and is invalidated by the next to_mpz() call on the same
// thread; copy it out if it must persist.
inline const mpz_class& Nat::to_mpz() const {
  using detail::NatRep;
  if (!rep_) {
    thread_local mpz_class scratch;
    mpz_import(scratch.get_mpz_t(), 1, 1, sizeof(uint64_t), 0, 0, &w_);
    return scratch;
  }
  if (rep_->kind == NatRep::Kind::Mpz) return *rep_->mpz;
  if (rep_->num_cache) return *rep_->num_cache;
  if (rep_->lg_hi > detail::kMaxMaterialBits)
    throw resource_limit_error(
        "Nat: refusing to materialise a value of ~2^" +
        std::to_string(static_cast<long long>(rep_->lg_hi)) + " magnitude");
  // Iterative post-order over the pair DAG.
  auto shallow = [](const Nat& n) -> mpz_class {
    if (!n.rep_) {
      mpz_class v;
      mpz_import(v.get_mpz_t(), 1, 1, sizeof(uint64_t), 0, 0, &n.w_);
      return v;
    }
    if (n.rep_->kind == NatRep::Kind::Mpz) return *n.rep_->mpz;
    return *n.rep_->num_cache;  // filled by traversal order below
  };
  auto pending = [](const Nat& n) {
    return n.rep_ && n.rep_->kind == NatRep::Kind::Pair && !n.rep_->num_cache;
  };
  std::vector<const NatRep*> stack{rep_.get()};
  while (!stack.empty()) {
    const NatRep* n = stack.back();
    if (n->num_cache) {
      stack.pop_back();
      continue;
    }
    bool ready = true;
    if (pending(n->left)) {
      stack.push_back(n->left.rep_.get());
      ready = false;
    }
    if (pending(n->right)) {
      stack.push_back(n->right.rep_.get());
      ready = false;
    }
    if (!ready) continue;
    mpz_class a = shallow(n->left);
    mpz_class b = shallow(n->right);
    mpz_class s = a + b;
    mpz_class c = s * (s + 1) / 2 + b;
    n->num_cache = std::make_shared<const mpz_class>(std::move(c));
    stack.pop_back();
  }
  return *rep_->num_cache;
}

inline std::string Nat::to_decimal() const {
  if (!rep_) return std::to_string(w_);
  return to_mpz().get_str();
}

// ---- scalar operations ------------------------------------------------------

inline bool Nat::odd() const {
  if (!rep_) return (w_ & 1) != 0;
  return mpz_odd_p(to_mpz().get_mpz_t()) != 0;
}

inline Nat Nat::inc() const {
  if (!rep_) {
    if (w_ < UINT64_MAX) return Nat(w_ + 1);
    mpz_class v = to_mpz() + 1;
    return from_big(std::move(v));
  }
  mpz_class v = to_mpz() + 1;
  return from_big(std::move(v));
}

inline Nat Nat::dec() const {
  if (!rep_) {
    if (w_ == 0) throw std::invalid_argument("Nat::dec: zero");
    return Nat(w_ - 1);
  }
  mpz_class v = to_mpz() - 1;
  return from_big(std::move(v));
}

inline Nat Nat::dbl() const {
  if (!rep_ && w_ <= (UINT64_MAX >> 1)) return Nat(w_ << 1);
  mpz_class v = to_mpz() << 1;
  return from_big(std::move(v));
}

inline Nat Nat::half() const {
  if (!rep_) return Nat(w_ >> 1);
  mpz_class v = to_mpz() >> 1;
  return from_big(std::move(v));
}

// ---- pairing ----------------------------------------------------------------

inline Nat Nat::pair(const Nat& a, const Nat& b) {
  if (!a.rep_ && !b.rep_) {
    unsigned __int128 s = static_cast<unsigned __int128>(a.w_) + b.w_;
    unsigned __int128 c = s * (s + 1) / 2 + b.w_;
    if (c <= UINT64_MAX) return Nat(static_cast<uint64_t>(c));
  }
  auto rep = std::make_shared<detail::NatRep>();
  rep->kind = detail::NatRep::Kind::Pair;
  rep->left = a;
  rep->right = b;
  double m_hi = std::max(a.log2_hi(), b.log2_hi());
  double m_lo = std::max(a.log2_lo(), b.log2_lo());
  rep->lg_hi = 2 * m_hi + 2;
  rep->lg_lo = std::max(64.0, 2 * m_lo - 2);
  return Nat(std::move(rep));
}

inline std::pair<Nat, Nat> Nat::unpair() const {
  using detail::NatRep;
  if (!rep_) {
    // Numeric unpair: w = (isqrt(8n+1)-1)/2, t = w(w+1)/2, b = n-t, a = w-b.
    unsigned __int128 m = static_cast<unsigned __int128>(w_) * 8 + 1;
    uint64_t s;
    if (m <= UINT64_MAX) {
      s = detail::u64_isqrt(static_cast<uint64_t>(m));
    } else {
      // 2^64 <= 8n+1 < 2^67: isqrt fits comfortably in u64.
      auto approx = static_cast<uint64_t>(
          std::sqrt(static_cast<double>(m)));
      s = approx;
      auto sq = [](uint64_t x) { return static_cast<unsigned __int128>(x) * x; };
      while (s > 0 && sq(s) > m) --s;
      while (sq(s + 1) <= m) ++s;
    }
    uint64_t w = (s - 1) / 2;
    uint64_t t = (w % 2 == 0) ? (w / 2) * (w + 1) : w * ((w + 1) / 2);
    uint64_t b = w_ - t;
    uint64_t a = w - b;
    return {Nat(a), Nat(b)};
  }
  if (!rep_->children_cached) {
    if (rep_->kind == NatRep::Kind::Pair) {
      rep_->child_l = rep_->left;
      rep_->child_r = rep_->right;
    } else {
      const mpz_class& n = *rep_->mpz;
      mpz_class m = 8 * n + 1;
      mpz_class s = sqrt(m);
      mpz_class w = (s - 1) / 2;
      mpz_class t = w * (w + 1) / 2;
      mpz_class b = n - t;
      mpz_class a = w - b;
      rep_->child_l = from_big(std::move(a));
      rep_->child_r = from_big(std::move(b));
    }
    rep_->children_cached = true;
  }
  return {rep_->child_l, rep_->child_r};
}

// ---- comparison -------------------------------------------------------------

inline bool Nat::operator==(const Nat& o) const {
  using detail::NatRep;
  if (!rep_ && !o.rep_) return w_ == o.w_;
  if (!rep_ || !o.rep_) return false;  // heap nodes denote values > 2^64-1
  if (rep_.get() == o.rep_.get()) return true;
  if (rep_->lg_hi < o.rep_->lg_lo || o.rep_->lg_hi < rep_->lg_lo) return false;

  // Iterative structural equality with a visited-pair memo: equal unshared
  // trees would otherwise cost exponential time, and deep chains would
  // overflow the stack.  Cantor pairing is injective, so component-wise
  // equality decides pair-node equality.
  struct PairHash {
    size_t operator()(const std::pair<const void*, const void*>& p) const {
      return std::hash<const void*>()(p.first) * 0x9e3779b97f4a7c15ull ^
             std::hash<const void*>()(p.second);
    }
  };
  std::unordered_set<std::pair<const void*, const void*>, PairHash> seen;
  std::vector<std::pair<Nat, Nat>> work{{*this, o}};
  while (!work.empty()) {
    auto [x, y] = std::move(work.back());
    work.pop_back();
    if (!x.rep_ && !y.rep_) {
      if (x.w_ != y.w_) return false;
      continue;
    }
    if (!x.rep_ || !y.rep_) return false;
    if (x.rep_.get() == y.rep_.get()) continue;
    if (!seen.insert({x.rep_.get(), y.rep_.get()}).second) continue;
    if (x.rep_->lg_hi < y.rep_->lg_lo || y.rep_->lg_hi < x.rep_->lg_lo)
      return false;
    bool xp = x.rep_->kind == NatRep::Kind::Pair;
    bool yp = y.rep_->kind == NatRep::Kind::Pair;
    if (xp || yp) {
      // Unpair both sides (structural on pair nodes, numeric on mpz nodes;
      // the numeric side caches its children on the node).
      auto [xl, xr] = x.unpair();
      auto [yl, yr] = y.unpair();
      work.push_back({std::move(xl), std::move(yl)});
      work.push_back({std::move(xr), std::move(yr)});
      continue;
    }
    if (::cmp(*x.rep_->mpz, *y.rep_->mpz) != 0) return false;
  }
  return true;
}

inline int Nat::cmp(const Nat& o) const {
  if (!rep_ && !o.rep_) return w_ < o.w_ ? -1 : w_ > o.w_ ? 1 : 0;
  if (!rep_) return -1;
  if (!o.rep_) return 1;
  if (rep_.get() == o.rep_.get()) return 0;
  if (rep_->lg_hi < o.rep_->lg_lo) return -1;
  if (o.rep_->lg_hi < rep_->lg_lo) return 1;
  if (*this == o) return 0;
  return ::cmp(to_mpz(), o.to_mpz());
}

inline Nat cantor_pair(const Nat& a, const Nat& b) { return Nat::pair(a, b); }

inline std::ostream& operator<<(std::ostream& os, const Nat& n) {
  return os << n.to_decimal();
}

}  // namespace ink
