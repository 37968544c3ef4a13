#pragma once

#include <string>

#include "stackspt/instance.hpp"

namespace stackspt::ref {

// r=0 -> a=1 (F 1), a -> b=2 (F 1), r -> b (P e_1): both routes to b cost 2
// when p(e_1) = 2.
inline Instance tie_instance() {
  return Instance(3, 0, {Edge::fixed(0, 1, 1), Edge::fixed(1, 2, 1), Edge::priceable(0, 2, 1)});
}

// r=0 -> s=1 (F 1), s -> t=2 (P e_1), r -> t (F 10). Single breakpoint at 9.
inline Instance breakpoint_instance() {
  return Instance(3, 0, {Edge::fixed(0, 1, 1), Edge::priceable(1, 2, 1), Edge::fixed(0, 2, 10)});
}

inline std::string tie_instance_text() {
  return "stackspt 1\n"
         "graph 3 3 1\n"
         "root 0\n"
         "edge 0 1 F 1\n"
         "edge 1 2 F 1\n"
         "edge 0 2 P 1\n";
}

}  // namespace stackspt::ref
