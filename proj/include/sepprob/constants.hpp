#pragma once

// Registry of exact, conjectured and estimated separability/PPT probabilities
// (and the related X-state integrals) that estimates are compared against.
// `closed_form` uses a small arithmetic grammar: numbers, + - * / ^,
// parentheses, pi, sqrt(.), ln(.).

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <string_view>
#include <vector>

namespace sepprob {

enum class Status { proven, conjectured, estimate, superseded };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::proven: return "proven";
    case Status::conjectured: return "conjectured";
    case Status::estimate: return "estimate";
    case Status::superseded: return "superseded";
  }
  return "?";
}

struct ConstantEntry {
  std::string name;
  std::string closed_form;
  double value;
  Status status;
  std::string context;
};

inline const std::vector<ConstantEntry>& constants_registry() {
  using std::numbers::pi;
  const double pi2 = pi * pi;
  // Differences of large terms are stored as correctly rounded literals; evaluating them in double loses digits.
  static const std::vector<ConstantEntry> entries = {
      // Hilbert-Schmidt, 4x4
      {"hs_two_rebit", "29/64", 29.0 / 64, Status::proven, "HS two-rebit separability"},
      {"hs_two_qubit", "8/33", 8.0 / 33, Status::conjectured, "HS two-qubit separability"},
      {"hs_two_quaterbit", "26/323", 26.0 / 323, Status::conjectured, "HS two-quaterbit separability"},
      {"induced_k1_two_qubit", "61/143", 61.0 / 143, Status::conjectured, "induced measure k=1, two-qubit"},
      {"hs_det_partition_fraction", "1/2", 0.5, Status::conjectured,
       "HS PPT states with |rho^PT| > |rho| (equipartition)"},
      // Bures and sqrt(x) monotone, 4x4
      {"bures_two_qubit", "25/341", 25.0 / 341, Status::conjectured, "Bures two-qubit separability"},
      {"bures_two_qubit_alt", "sqrt(51)/pi^4", std::sqrt(51.0) / (pi2 * pi2), Status::conjectured,
       "Bures two-qubit, alternative fit"},
      {"bures_two_qubit_estimate", "0.073313759", 0.073313759, Status::estimate,
       "Bures two-qubit, 16,895,000,000 quasirandom iterations"},
      {"bures_two_qubit_2002", "8/(11*pi^2)", 8.0 / (11 * pi2), Status::superseded, "early Bures two-qubit conjecture"},
      {"bures_two_qubit_silver", "1680*(sqrt(2)-1)/pi^8", 1680 * (std::sqrt(2.0) - 1) / std::pow(pi, 8),
       Status::superseded, "silver-mean Bures two-qubit conjecture"},
      {"bures_two_rebit", "0.157096234", 0.157096234, Status::estimate,
       "Bures two-rebit, 23,460,000,000 quasirandom iterations"},
      {"bures_det_partition_fraction", "5894648/8945951", 5894648.0 / 8945951, Status::estimate,
       "Bures two-qubit PPT states with |rho^PT| > |rho|"},
      {"sqrtx_two_qubit", "1-256/(27*pi^2)", 1 - 256 / (27 * pi2), Status::conjectured,
       "operator monotone sqrt(x), two-qubit"},
      {"sqrtx_two_rebit", "0.26223001318", 0.26223001318, Status::estimate, "operator monotone sqrt(x), two-rebit"},
      // 6x6
      {"hs_qubit_qutrit", "27/1000", 27.0 / 1000, Status::conjectured, "HS qubit-qutrit separability"},
      {"hs_rebit_retrit", "860/6561", 860.0 / 6561, Status::conjectured, "HS rebit-retrit separability"},
      {"bures_qubit_qutrit", "1/715", 1.0 / 715, Status::conjectured, "Bures qubit-qutrit separability"},
      {"bures_qubit_qutrit_estimate", "1479997/1058000000", 1479997.0 / 1058000000, Status::estimate,
       "Bures qubit-qutrit, 3,174 million quasirandom iterations"},
      // 8x8 and larger
      {"hs_2x4_ppt", "16/12375", 16.0 / 12375, Status::conjectured, "HS qubit-qudit 2x4 PPT"},
      {"hs_2x4_ppt_estimate", "0.0012928963", 0.0012928963, Status::estimate, "HS 2x4 PPT, 2,104 million iterations"},
      {"hs_2x5_ppt", "125/4790016", 125.0 / 4790016, Status::conjectured, "HS qubit-qudit 2x5 PPT"},
      {"hs_rebit_redit_2x4_ppt", "201/8192", 201.0 / 8192, Status::conjectured, "HS rebit-redit 2x4 PPT"},
      {"hs_rebit_redit_2x5_ppt", "29058/9765625", 29058.0 / 9765625, Status::conjectured, "HS rebit-redit 2x5 PPT"},
      {"hs_2x4_realign_entangled", "589/625", 589.0 / 625, Status::conjectured,
       "HS 2x4 entanglement by realignment"},
      {"hs_2x4_realign_entangled_estimate", "0.942343", 0.942343, Status::estimate,
       "HS 2x4 entanglement by realignment, 795 million iterations"},
      {"hs_2x4_bound_entangled", "0.000234478", 0.000234478, Status::estimate,
       "HS 2x4 bound entanglement (PPT and realignment-detected)"},
      {"hs_two_qutrit_ppt", "0.00010275452", 0.00010275452, Status::estimate,
       "HS two-qutrit PPT, 1,768 million iterations"},
      {"hs_two_qutrit_ppt_a", "323/3161088", 323.0 / 3161088, Status::conjectured, "HS two-qutrit PPT candidate"},
      {"hs_two_qutrit_ppt_b", "11/107653", 11.0 / 107653, Status::conjectured, "HS two-qutrit PPT candidate"},
      {"bures_2x4_ppt", "625/109531136", 625.0 / 109531136, Status::conjectured, "Bures qubit-qudit 2x4 PPT"},
      {"bures_2x4_ppt_estimate", "5.7349398e-6", 5.7349398e-6, Status::estimate,
       "Bures 2x4 PPT, 830 million iterations"},
      {"bures_two_qutrit_ppt", "6.3421829e-8", 6.3421829e-8, Status::estimate,
       "Bures two-qutrit PPT, 678 million iterations"},
      // X-states and separability-function integrals
      {"xstate_hs_rebit_retrit", "16/(3*pi^2)", 16 / (3 * pi2), Status::proven,
       "HS X-states: two-rebit, rebit-retrit, two-retrit"},
      {"xstate_hs_two_qubit", "2/5", 0.4, Status::proven, "HS two-qubit X-states"},
      {"xstate_8d_numerator", "pi/967680", pi / 967680, Status::proven, "8-dim X-state numerator integral"},
      {"xstate_8d_denominator", "pi^3/5160960", pi * pi2 / 5160960, Status::proven, "8-dim X-state denominator integral"},
      {"xstate_10d_denominator", "pi/29030400", pi / 29030400, Status::proven, "10-dim rebit-retrit denominator integral"},
      {"xstate_10d_upper_bound", "919/5-264*ln(2)", 0.80914433217443831385, Status::proven,
       "10-dim rebit-retrit bound from the leading 5x5 minor"},
      {"xstate_10d_rebit_retrit", "272/(45*pi^2)", 272 / (45 * pi2), Status::proven,
       "10-dim rebit-retrit separability (dilogarithm function)"},
      {"xstate_enlarged_two_retrit", "65/(36*pi)", 65 / (36 * pi), Status::proven,
       "two-retrit X-states with one extra entry"},
      {"hypothesized_qubit_qutrit_10d", "(5/3)*(112*pi^2-1105)", 0.65948820334694218244, Status::conjectured,
       "10-dim qubit-qutrit analogue"},
      {"hypothesized_quaterbit_quatertrit_10d", "8962661573/4725-192192*pi^2", 0.58311514615764113082,
       Status::conjectured, "10-dim quaterbit-quatertrit analogue"},
  };
  return entries;
}

inline const ConstantEntry* find_constant(std::string_view name) {
  const auto& reg = constants_registry();
  auto it = std::find_if(reg.begin(), reg.end(), [&](const ConstantEntry& e) { return e.name == name; });
  return it == reg.end() ? nullptr : &*it;
}

}  // namespace sepprob
