#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "lrcluster/linalg.hpp"

namespace lrc {

// One named matrix A_i with its cached squared Frobenius norm.
class Block {
public:
    Block(std::string id, Matrix data);

    const std::string& id() const noexcept { return id_; }
    const Matrix& data() const noexcept { return data_; }
    Eigen::Index rows() const noexcept { return data_.rows(); }
    Eigen::Index cols() const noexcept { return data_.cols(); }
    double energy_sq() const noexcept { return energy_sq_; }

    friend bool operator==(const Block& a, const Block& b) {
        return a.id_ == b.id_ && a.data_.rows() == b.data_.rows() &&
               a.data_.cols() == b.data_.cols() && a.data_ == b.data_;
    }

private:
    std::string id_;
    Matrix data_;
    double energy_sq_ = 0.0;
};

// Ordered blocks sharing one row dimension m, with unique ids.
class Collection {
public:
    Collection() = default;
    explicit Collection(std::vector<Block> blocks);

    std::size_t size() const noexcept { return blocks_.size(); }
    bool empty() const noexcept { return blocks_.empty(); }
    Eigen::Index rows() const noexcept { return rows_; }
    const std::vector<Block>& blocks() const noexcept { return blocks_; }
    const Block& operator[](std::size_t i) const { return blocks_[i]; }

    // Throws NotFound.
    const Block& at(const std::string& id) const;
    std::size_t index_of(const std::string& id) const;
    bool contains(const std::string& id) const { return index_.count(id) != 0; }

    // Total number of stored values, sum_i m * n_i.
    std::size_t parameter_count() const noexcept;
    // Block ids in collection order.
    std::vector<std::string> ids() const;
    double energy_sq() const noexcept;

    // [A_{ids[0]}, A_{ids[1]}, ...]
    Matrix concat(std::span<const std::string> ids) const;

    friend bool operator==(const Collection& a, const Collection& b) {
        return a.rows_ == b.rows_ && a.blocks_ == b.blocks_;
    }

private:
    Eigen::Index rows_ = 0;
    std::vector<Block> blocks_;
    std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace lrc
