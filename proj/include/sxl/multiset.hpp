#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <utility>
#include <vector>

namespace sxl {

// Multiset kept as a sorted vector. The sortedness gives every multiset a
// unique representation, so structural equality and ordering are just the
// vector ones.
template <typename T>
class Multiset {
public:
  Multiset() = default;
  explicit Multiset(std::vector<T> items) : items_(std::move(items)) {
    std::sort(items_.begin(), items_.end());
  }

  void insert(T value) {
    auto it = std::upper_bound(items_.begin(), items_.end(), value);
    items_.insert(it, std::move(value));
  }

  // Removes one copy of `value`; returns false if absent.
  bool erase_one(const T& value) {
    auto it = std::lower_bound(items_.begin(), items_.end(), value);
    if (it == items_.end() || !(*it == value)) return false;
    items_.erase(it);
    return true;
  }

  bool contains(const T& value) const {
    return std::binary_search(items_.begin(), items_.end(), value);
  }

  std::size_t count(const T& value) const {
    auto [lo, hi] = std::equal_range(items_.begin(), items_.end(), value);
    return static_cast<std::size_t>(hi - lo);
  }

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  const T& front() const { return items_.front(); }

  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }
  const std::vector<T>& items() const { return items_; }

  template <typename Pred>
  bool all_of(Pred pred) const {
    return std::all_of(items_.begin(), items_.end(), pred);
  }

  template <typename Pred>
  std::pair<Multiset, Multiset> partition(Pred pred) const {
    Multiset yes, no;
    for (const T& x : items_) (pred(x) ? yes : no).items_.push_back(x);
    return {std::move(yes), std::move(no)};
  }

  // Distinct values, in order.
  std::vector<T> distinct() const {
    std::vector<T> out;
    for (const T& x : items_)
      if (out.empty() || !(out.back() == x)) out.push_back(x);
    return out;
  }

  friend Multiset operator+(const Multiset& a, const Multiset& b) {
    Multiset out;
    out.items_.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(),
               std::back_inserter(out.items_));
    return out;
  }

  friend bool operator==(const Multiset&, const Multiset&) = default;
  friend auto operator<=>(const Multiset& a, const Multiset& b) {
    return std::lexicographical_compare_three_way(a.begin(), a.end(),
                                                  b.begin(), b.end());
  }

private:
  std::vector<T> items_;
};

}  // namespace sxl
