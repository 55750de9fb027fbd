#pragma once

#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace synsem {

// Set of category labels compared case-insensitively. The first spelling
// inserted for a label is the one reported; iteration is ordered by the
// case-folded label.
class CategorySet {
 public:
  using Map = std::map<std::string, std::string>;  // folded -> display

  CategorySet() = default;
  CategorySet(std::initializer_list<std::string_view> labels);

  bool insert(std::string_view label);
  bool erase(std::string_view label);
  bool contains(std::string_view label) const;

  bool empty() const { return labels_.empty(); }
  std::size_t size() const { return labels_.size(); }

  Map::const_iterator begin() const { return labels_.begin(); }
  Map::const_iterator end() const { return labels_.end(); }

  std::vector<std::string> labels() const;
  bool intersects(const CategorySet& other) const;

  bool operator==(const CategorySet&) const = default;

 private:
  Map labels_;
};

}  // namespace synsem
