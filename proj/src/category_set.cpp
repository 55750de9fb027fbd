#include "synsem/category_set.hpp"

#include "synsem/text.hpp"

namespace synsem {

CategorySet::CategorySet(std::initializer_list<std::string_view> labels) {
  for (auto label : labels) insert(label);
}

bool CategorySet::insert(std::string_view label) {
  return labels_.try_emplace(case_fold(label), std::string(label)).second;
}

bool CategorySet::erase(std::string_view label) { return labels_.erase(case_fold(label)) > 0; }

bool CategorySet::contains(std::string_view label) const { return labels_.count(case_fold(label)) > 0; }

std::vector<std::string> CategorySet::labels() const {
  std::vector<std::string> out;
  out.reserve(labels_.size());
  for (const auto& [key, display] : labels_) out.push_back(display);
  return out;
}

bool CategorySet::intersects(const CategorySet& other) const {
  const auto& small = size() <= other.size() ? labels_ : other.labels_;
  const auto& large = size() <= other.size() ? other.labels_ : labels_;
  for (const auto& [key, display] : small) {
    if (large.count(key)) return true;
  }
  return false;
}

}  // namespace synsem
