#pragma once

#include <optional>

#include "ginv/matrix.hpp"

namespace ginv {

/// First failed existence condition when a construction returns no inverse.
/// Existence failure is an answer, not a fault, so it travels by value.
enum class NotExistsReason {
    none,
    rank_square_drop,      // rank(A) ≠ rank(A²): group inverse missing
    image_dimension_drop,  // dim(A·M) < dim M
    not_complementary,     // A·M ⊕ N does not decompose the space
    kernel_not_contained,  // 𝒩(AD) ⊄ 𝒩(D)
    core_not_group,        // AD has no group inverse
    rank_incompatible,     // idempotent ranks admit no inverse at all
    left_identity_failed,  // candidate B has BA ≠ p
    right_identity_failed, // candidate B has I − AB ≠ q
};

inline const char* describe(NotExistsReason r) {
    switch (r) {
        case NotExistsReason::none: return "exists";
        case NotExistsReason::rank_square_drop: return "rank(A) ≠ rank(A²)";
        case NotExistsReason::image_dimension_drop: return "A collapses the prescribed range";
        case NotExistsReason::not_complementary:
            return "image of the prescribed range is not complementary to the prescribed nullspace";
        case NotExistsReason::kernel_not_contained: return "\U0001d4a9(AD) ⊈ \U0001d4a9(D)";
        case NotExistsReason::core_not_group: return "AD has no group inverse";
        case NotExistsReason::rank_incompatible: return "idempotent ranks are incompatible";
        case NotExistsReason::left_identity_failed: return "candidate fails BA = p";
        case NotExistsReason::right_identity_failed: return "candidate fails I - AB = q";
    }
    return "unknown";
}

template <class T>
struct InverseResult {
    std::optional<Matrix<T>> value;
    NotExistsReason reason = NotExistsReason::none;

    bool exists() const { return value.has_value(); }
    const Matrix<T>& matrix() const { return value.value(); }

    static InverseResult found(Matrix<T> m) { return {std::move(m), NotExistsReason::none}; }
    static InverseResult missing(NotExistsReason r) { return {std::nullopt, r}; }
};

} // namespace ginv
