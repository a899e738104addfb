#ifndef JACPAIR_VERDICT_HPP
#define JACPAIR_VERDICT_HPP

#include <string>

namespace jac {

struct Verdict {
  bool pass = true;
  std::string detail;
};

}  // namespace jac

#endif
