#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace campus::forecast {

struct Fold {
    std::vector<std::size_t> train;
    std::vector<std::size_t> test;
};

// Expanding-window splits that preserve temporal order: fold f tests on the
// f-th of n_folds consecutive terminal blocks of test_len instances and
// trains on everything before it.
inline std::vector<Fold> rolling_splits(std::size_t n_instances, std::size_t n_folds,
                                        std::size_t test_len) {
    if (test_len == 0) throw std::invalid_argument("rolling_splits: test_len must be positive");
    if (n_folds == 0) throw std::invalid_argument("rolling_splits: need at least one fold");
    if (n_folds * test_len >= n_instances)
        throw std::invalid_argument("rolling_splits: folds leave no training data");
    std::vector<Fold> folds(n_folds);
    for (std::size_t f = 0; f < n_folds; ++f) {
        const std::size_t test_start = n_instances - (n_folds - f) * test_len;
        for (std::size_t i = 0; i < test_start; ++i) folds[f].train.push_back(i);
        for (std::size_t i = test_start; i < test_start + test_len; ++i) folds[f].test.push_back(i);
    }
    return folds;
}

} // namespace campus::forecast
