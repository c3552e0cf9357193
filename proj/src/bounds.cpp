#include "lrcluster/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lrcluster/error.hpp"

namespace lrc {

std::string_view to_string(BoundKind kind) noexcept {
    switch (kind) {
        case BoundKind::weyl: return "weyl";
        case BoundKind::residual: return "residual";
        case BoundKind::plugin: return "plugin";
        case BoundKind::exact: return "exact";
    }
    return "exact";
}

BoundKind bound_kind_from_string(std::string_view name) {
    if (name == "weyl") return BoundKind::weyl;
    if (name == "residual") return BoundKind::residual;
    if (name == "plugin") return BoundKind::plugin;
    if (name == "exact") return BoundKind::exact;
    throw InvalidArgument("unknown bound kind '" + std::string(name) + "'");
}

BlockSummary summarize(const Block& block, std::size_t r) {
    const Spectrum s = singular_values(block.data());
    BlockSummary out{block.id(), static_cast<std::size_t>(block.cols()), block.energy_sq(), {}};
    const std::size_t k = std::min(r, s.size());
    out.leading_sv_sq.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        out.leading_sv_sq.push_back(s[i] * s[i]);
    }
    out.tail_sv_sq = 0.0;
    for (std::size_t i = k; i < s.size(); ++i) {
        out.tail_sv_sq += s[i] * s[i];
    }
    return out;
}

BoundValue BoundValue::make(BoundKind kind, double error_sq, double total_energy_sq) {
    BoundValue b;
    b.kind = kind;
    const double total = std::max(total_energy_sq, 0.0);
    b.error_sq = std::clamp(error_sq, 0.0, total);
    b.error = std::sqrt(b.error_sq);
    b.relative = total > 0.0 ? std::sqrt(b.error_sq / total) : 0.0;
    return b;
}

BoundValue weyl_bound(const std::vector<BlockSummary>& summaries, std::size_t r) {
    if (summaries.empty()) {
        throw InvalidArgument("weyl_bound: empty summary list");
    }
    double total = 0.0;
    double best_head = 0.0;
    std::size_t best = 0;
    for (std::size_t j = 0; j < summaries.size(); ++j) {
        const BlockSummary& s = summaries[j];
        const std::size_t k = std::min(r, s.leading_sv_sq.size());
        const double head = std::accumulate(s.leading_sv_sq.begin(), s.leading_sv_sq.begin() + k, 0.0);
        // A short list is acceptable only if it already carries the whole energy.
        if (s.leading_sv_sq.size() < std::min(r, s.cols) && head < s.energy_sq * (1.0 - 1e-9)) {
            throw InvalidArgument("weyl_bound: summary '" + s.block_id +
                                  "' carries too few singular values for r = " + std::to_string(r));
        }
        total += s.energy_sq;
        if (j == 0 || head > best_head) {
            best_head = head;
            best = j;
        }
    }
    // Energy of the other blocks plus the anchor's own tail, summed without cancellation.
    const BlockSummary& anchor = summaries[best];
    double err_sq = anchor.energy_sq - best_head;
    if (anchor.tail_sv_sq >= 0.0) {
        err_sq = anchor.tail_sv_sq;
        for (std::size_t i = std::min(r, anchor.leading_sv_sq.size()); i < anchor.leading_sv_sq.size(); ++i) {
            err_sq += anchor.leading_sv_sq[i];
        }
    }
    for (std::size_t j = 0; j < summaries.size(); ++j) {
        if (j != best) {
            err_sq += summaries[j].energy_sq;
        }
    }
    return BoundValue::make(BoundKind::weyl, err_sq, total);
}

BoundValue weyl_tail_bound(double total_energy_sq, double head_energy_sq) {
    if (total_energy_sq < 0.0 || head_energy_sq < 0.0) {
        throw InvalidArgument("weyl_tail_bound: negative energy");
    }
    if (head_energy_sq > total_energy_sq * (1.0 + 1e-9)) {
        throw InvalidArgument("weyl_tail_bound: head energy exceeds total energy");
    }
    return BoundValue::make(BoundKind::weyl, total_energy_sq - head_energy_sq, total_energy_sq);
}

namespace {

// total - sum_{j<=r} s_j^2, evaluated as (total - sum_all) + sum_{j>r} so that
// a small tail is not lost to cancellation against the head.
double energy_outside_head(double total_energy_sq, const Spectrum& s, std::size_t r) {
    const double all = s.head_energy_sq(s.size());
    double tail = 0.0;
    for (std::size_t j = r; j < s.size(); ++j) {
        tail += s[j] * s[j];
    }
    return (total_energy_sq - all) + tail;
}

}  // namespace

BoundValue residual_bound(double total_energy_sq, const Spectrum& mu, std::size_t r) {
    return BoundValue::make(BoundKind::residual, energy_outside_head(total_energy_sq, mu, r),
                            total_energy_sq);
}

BoundValue plugin_estimate(double total_energy_sq, const Spectrum& sigma_tilde, std::size_t r) {
    return BoundValue::make(BoundKind::plugin,
                            energy_outside_head(total_energy_sq, sigma_tilde, r), total_energy_sq);
}

BoundValue exact_bound(const Matrix& M, std::size_t r) {
    const double e = exact_trunc_error(M, r);
    return BoundValue::make(BoundKind::exact, e * e, frobenius_sq(M));
}

double slack(const BoundValue& predicted, const BoundValue& exact) noexcept {
    return predicted.error - exact.error;
}

}  // namespace lrc
