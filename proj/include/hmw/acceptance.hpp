#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hmw/report.hpp"

namespace hmw {

struct Criterion {
    Criterion() = default;
    Criterion(std::string id_, std::string name_) : id(std::move(id_)), name(std::move(name_)) {}
    std::string id;
    std::string name;
    bool pass = false;
    double value = 0.0;      // the worst observed metric
    double tolerance = 0.0;  // the threshold it is compared against
    std::string detail;
    double seconds = 0.0;    // not part of any report
};

struct AcceptanceOptions {
    bool full = false;  // extends the trend sweeps beyond the desk-scale suite
    int threads = 1;
    bool determinism = true;  // criterion 15 reruns the suite at a second thread count
};

using ProgressFn = void (*)(const Criterion&);

// Criteria 1 to 14, in order, with 9 split into 9a, 9b, 9c.
std::vector<Criterion> run_criteria(const AcceptanceOptions& opt, ProgressFn progress = nullptr);
// Adds criterion 15 when opt.determinism is set.
std::vector<Criterion> run_acceptance(const AcceptanceOptions& opt, ProgressFn progress = nullptr);

Report acceptance_report(const std::vector<Criterion>& cs, const AcceptanceOptions& opt);
std::string format_criterion_line(const Criterion& c);

}  // namespace hmw
