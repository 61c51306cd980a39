#pragma once

#include "cantorifs/construct.hpp"

namespace fixture {

inline const cantorifs::Bump& bump() {
  static const cantorifs::Bump b = cantorifs::bump_modify(cantorifs::ConstructionParams{});
  return b;
}

inline const cantorifs::ClassCExample& example() {
  static const cantorifs::ClassCExample ex = cantorifs::build_class_c_example();
  return ex;
}

/// The uncastrated eps-family member at the example's alpha.
inline const cantorifs::IFSPair& family_at_alpha() {
  static const cantorifs::IFSPair p =
      cantorifs::epsilon_family(bump().f0, example().params.k, example().alpha);
  return p;
}

inline const cantorifs::AppendixPair& appendix() {
  static const cantorifs::AppendixPair ap = cantorifs::appendix_pair();
  return ap;
}

}  // namespace fixture
