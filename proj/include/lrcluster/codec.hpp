#pragma once
//
// Binary containers. All integers and reals little-endian, reals IEEE-754
// binary64, matrices column-major, no padding.
//
// .mcol  "MCOL" | version u32 (=1) | m u64 | block_count u64
//        | per block: id_len u32, id bytes, cols u64
//        | block payloads in header order (m x cols f64 each)
//
// .msvd  "MSVD" | version u32 (=1) | m u64 | cluster_count u64
//        | per cluster: id_len u32, id, r_c u64, member_count u64,
//                      per member: id_len u32, id, cols u64
//        | per cluster: U_tilde (m x r_c f64), V (N_c x r_c f64)
//
// Raw matrix (reconstruct output): rows u64 | cols u64 | rows x cols f64.
//

#include <filesystem>
#include <string>

#include "lrcluster/collection.hpp"
#include "lrcluster/store.hpp"

namespace lrc {

std::string encode_collection(const Collection& coll);
// Throws FormatError on bad magic/version, truncation, trailing bytes,
// duplicate ids or non-finite values.
Collection decode_collection(const std::string& bytes);

std::string encode_store(const CompressedStore& store);
CompressedStore decode_store(const std::string& bytes);

std::string encode_raw_matrix(const Matrix& M);
Matrix decode_raw_matrix(const std::string& bytes);

void write_collection(const Collection& coll, const std::filesystem::path& path);
Collection read_collection(const std::filesystem::path& path);

void write_store(const CompressedStore& store, const std::filesystem::path& path);
CompressedStore read_store(const std::filesystem::path& path);

void write_raw_matrix(const Matrix& M, const std::filesystem::path& path);
Matrix read_raw_matrix(const std::filesystem::path& path);

// Whole-file helpers; throw Error on I/O failure.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& bytes);

}  // namespace lrc
