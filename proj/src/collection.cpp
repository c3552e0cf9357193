#include "lrcluster/collection.hpp"

#include "lrcluster/error.hpp"

namespace lrc {

Block::Block(std::string id, Matrix data) : id_(std::move(id)), data_(std::move(data)) {
    if (data_.rows() < 1 || data_.cols() < 1) {
        throw InvalidArgument("block '" + id_ + "' must have at least one row and one column");
    }
    require_finite(data_, "block");
    energy_sq_ = frobenius_sq(data_);
}

Collection::Collection(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) {
        return;
    }
    rows_ = blocks_.front().rows();
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        const Block& b = blocks_[i];
        if (b.rows() != rows_) {
            throw InvalidArgument("block '" + b.id() + "' has " + std::to_string(b.rows()) +
                                  " rows, collection has " + std::to_string(rows_));
        }
        if (!index_.emplace(b.id(), i).second) {
            throw InvalidArgument("duplicate block id '" + b.id() + "'");
        }
    }
}

const Block& Collection::at(const std::string& id) const {
    return blocks_[index_of(id)];
}

std::size_t Collection::index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) {
        throw NotFound("unknown block id '" + id + "'");
    }
    return it->second;
}

std::size_t Collection::parameter_count() const noexcept {
    std::size_t n = 0;
    for (const Block& b : blocks_) {
        n += static_cast<std::size_t>(b.rows() * b.cols());
    }
    return n;
}

std::vector<std::string> Collection::ids() const {
    std::vector<std::string> out;
    out.reserve(blocks_.size());
    for (const Block& b : blocks_) {
        out.push_back(b.id());
    }
    return out;
}

double Collection::energy_sq() const noexcept {
    double e = 0.0;
    for (const Block& b : blocks_) {
        e += b.energy_sq();
    }
    return e;
}

Matrix Collection::concat(std::span<const std::string> ids) const {
    std::vector<const Matrix*> parts;
    parts.reserve(ids.size());
    for (const std::string& id : ids) {
        parts.push_back(&at(id).data());
    }
    if (parts.empty()) {
        return Matrix(rows_, 0);
    }
    return hconcat(parts);
}

}  // namespace lrc
