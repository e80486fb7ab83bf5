#pragma once

#include "xxz/common.hpp"

namespace xxz {

/// Integer partition: weakly decreasing non-negative parts.  Trailing zeros are
/// allowed and significant only for the declared length (determinant sizes).
struct Partition {
  std::vector<int> parts;

  Partition() = default;
  explicit Partition(std::vector<int> p) : parts(std::move(p)) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (parts[i] < 0) throw std::invalid_argument("Partition: negative part");
      if (i > 0 && parts[i] > parts[i - 1])
        throw std::invalid_argument("Partition: parts must be weakly decreasing");
    }
  }

  int length() const { return int(parts.size()); }

  int sum() const {
    int s = 0;
    for (int p : parts) s += p;
    return s;
  }

  int first() const { return parts.empty() ? 0 : parts[0]; }

  /// Number of parts >= i for i = 1..first().
  Partition conjugate() const {
    std::vector<int> c;
    for (int i = 1; i <= first(); ++i) {
      int cnt = 0;
      for (int p : parts)
        if (p >= i) ++cnt;
      c.push_back(cnt);
    }
    return Partition(std::move(c));
  }

  Partition padded(int len) const {
    std::vector<int> p = parts;
    while (int(p.size()) < len) p.push_back(0);
    return Partition(std::move(p));
  }

  Partition trimmed() const {
    std::vector<int> p = parts;
    while (!p.empty() && p.back() == 0) p.pop_back();
    return Partition(std::move(p));
  }

  bool operator==(const Partition& o) const { return parts == o.parts; }
};

/// (2m-2, 2m-4, ..., 2, 0): m parts in steps of two.
inline Partition even_staircase(int m) {
  std::vector<int> p;
  for (int i = 1; i <= m; ++i) p.push_back(2 * m - 2 * i);
  return Partition(std::move(p));
}

/// The four staircase shapes attached to chain size 2n.
struct StaircaseFamily {
  Partition y;             // (2n-2, 2n-4, ..., 0), n parts
  Partition y_tilde;       // (n, n-1, n-1, ..., 1, 1, 0), 2n parts
  Partition y_prime_even;  // (n, n, n-1, n-1, ..., 1, 1), 2n parts
  Partition y_prime_odd;   // y_prime_even with an extra 0, 2n+1 parts
  Partition y_unit;        // (1, 1, ..., 1), 2n parts
};

inline StaircaseFamily staircase_partitions(int n) {
  if (n < 1) throw std::invalid_argument("staircase_partitions: n must be >= 1");
  StaircaseFamily f;
  f.y = even_staircase(n);
  std::vector<int> yt{n};
  for (int k = n - 1; k >= 1; --k) {
    yt.push_back(k);
    yt.push_back(k);
  }
  yt.push_back(0);
  f.y_tilde = Partition(std::move(yt));
  std::vector<int> yp{n, n};
  for (int k = n - 1; k >= 1; --k) {
    yp.push_back(k);
    yp.push_back(k);
  }
  f.y_prime_even = Partition(yp);
  yp.push_back(0);
  f.y_prime_odd = Partition(std::move(yp));
  f.y_unit = Partition(std::vector<int>(2 * n, 1));
  return f;
}

/// j-th member (0-based, j = 0..2n) of the interpolating family: raise the
/// first j parts of y_prime_odd by one, then delete part j.
inline Partition pi_partition(int n, int j) {
  if (j < 0 || j > 2 * n) throw std::invalid_argument("pi_partition: j out of range");
  std::vector<int> u = staircase_partitions(n).y_prime_odd.parts;
  for (int i = 0; i < j; ++i) u[i] += 1;
  u.erase(u.begin() + j);
  return Partition(std::move(u));
}

inline std::vector<Partition> pi_partitions(int n) {
  std::vector<Partition> out;
  for (int j = 0; j <= 2 * n; ++j) out.push_back(pi_partition(n, j));
  return out;
}

/// All partitions with at most `max_rows` parts, each at most `max_cols`
/// (the empty partition included), in lexicographically decreasing order.
inline std::vector<Partition> partitions_in_box(int max_rows, int max_cols) {
  std::vector<Partition> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int remaining_rows, int cap) -> void {
    out.push_back(Partition(cur));
    if (remaining_rows == 0) return;
    for (int p = cap; p >= 1; --p) {
      cur.push_back(p);
      self(self, remaining_rows - 1, p);
      cur.pop_back();
    }
  };
  rec(rec, max_rows, max_cols);
  return out;
}

}  // namespace xxz
