#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace cmjet {

enum class Status { Holds, Violated, Undetermined };

inline const char* status_name(Status s) {
    switch (s) {
        case Status::Holds: return "holds";
        case Status::Violated: return "violated";
        default: return "undetermined";
    }
}

// A point at which a claimed inequality fails; re-evaluating the polynomial
// there must reproduce a value of the claimed sign.
struct Witness {
    std::vector<std::complex<double>> z;
    double u = 0.0;   // real slot (u or t, depending on the check)
    double value = 0.0;
    std::string note;
};

struct Verdict {
    Status status = Status::Undetermined;
    std::string detail;  // certificate description / reason
    std::optional<Witness> witness;

    static Verdict holds(std::string d) { return {Status::Holds, std::move(d), std::nullopt}; }
    static Verdict violated(std::string d, Witness w) {
        return {Status::Violated, std::move(d), std::move(w)};
    }
    static Verdict violated(std::string d) { return {Status::Violated, std::move(d), std::nullopt}; }
    static Verdict undetermined(std::string d) {
        return {Status::Undetermined, std::move(d), std::nullopt};
    }

    bool ok() const { return status == Status::Holds; }
};

}  // namespace cmjet
