#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fuzzy/cutcore.hpp"

namespace fixtures {

using fuzzy::FuzzyNum;

// A reference number: the library object plus its membership function written
// out by hand, so oracles never go through the library's inversion.
struct Example {
    std::string name;
    FuzzyNum fz;
    std::function<double(double)> mu;
};

Example triangular();        // cuts [a-1, 1-a]
Example truncated_parabola();  // 1 - x^2 on [-sqrt 0.5, sqrt 0.5]
Example unsm();              // flat shoulders at level 0.5
Example eapcn();             // jump at the core
Example eapnd();             // kink at 0
Example eapnd_p();           // smoother for eapnd
Example eapnc();             // jump at 2.5
Example eapnc_z();           // smoother for eapnc
Example parabola(double p);  // 1 - (t/p)^2, cuts written directly

// The five reference numbers to be smoothed.
std::vector<Example> reference_numbers();
// Every hand-written example, smoothers included.
std::vector<Example> all_examples();

// Fixture file path under fixtures/.
std::string path(const std::string& name);

// Membership pieces from text, one "lo lo_closed hi hi_closed mono expr" per entry.
FuzzyNum from_text_pieces(const std::vector<std::string>& lines);

}  // namespace fixtures
