#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hillgap/model.hpp"

namespace hillgap::cli {

// "1.5-0.25i", "2", "-i", "3e-2+1e-1i" (no spaces).
cplx parse_complex(const std::string& s);

// "a..b", "a" or "a,b,c".
std::vector<int> parse_range(const std::string& s);

// Inline spec or the path of a file holding one:
//   zero | dirac-zero
//   mathieu:a=<c>[,b=<c>]            a e^{-2ix} + b e^{2ix} (b defaults to a)
//   hill:<k>=<c>,...                 v_k of e^{2ikx}
//   dirac:p<k>=<c>,q<k>=<c>,...      P and Q coefficients
//   dirac-two-exp:a=..,A=..,b=..,B=..
// Files may spread entries over lines; '#' starts a comment.
Potential parse_potential(const std::string& spec);

// Exit codes: 0 pass, 1 usage or precondition, 2 numerical or structural failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace hillgap::cli
