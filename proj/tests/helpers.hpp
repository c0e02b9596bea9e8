#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "st/network.hpp"
#include "st/time.hpp"

/// All event times {0, ..., horizon} plus infinity.
inline std::vector<st::Time> test_domain(std::uint64_t horizon) {
  std::vector<st::Time> d;
  for (std::uint64_t v = 0; v <= horizon; ++v) d.push_back(st::Time::finite(v));
  d.push_back(st::Time::infinity());
  return d;
}

/// Call fn with every binding of `names` over test_domain(horizon).
inline void for_all_bindings(const std::vector<std::string>& names, std::uint64_t horizon,
                             const std::function<void(const st::Binding&)>& fn) {
  auto dom = test_domain(horizon);
  std::vector<std::size_t> idx(names.size(), 0);
  while (true) {
    st::Binding b;
    for (std::size_t i = 0; i < names.size(); ++i) b[names[i]] = dom[idx[i]];
    fn(b);
    std::size_t i = names.size();
    while (i > 0 && ++idx[i - 1] == dom.size()) idx[--i] = 0;
    if (i == 0) break;
  }
}
