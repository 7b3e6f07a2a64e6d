#pragma once

#include "hyperlevy/errors.hpp"

namespace hyperlevy {

struct AccuracyPolicy {
    double rel_tol = 1e-12;
    double abs_tol = 1e-14;
    int max_iter = 500;

    void validate() const {
        if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || max_iter < 1) {
            throw DomainError("accuracy policy requires rel_tol > 0, abs_tol > 0, max_iter >= 1");
        }
    }
};

}  // namespace hyperlevy
