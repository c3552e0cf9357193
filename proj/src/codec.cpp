#include "lrcluster/codec.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <set>

#include "lrcluster/error.hpp"

namespace lrc {

namespace {

constexpr char kCollectionMagic[4] = {'M', 'C', 'O', 'L'};
constexpr char kStoreMagic[4] = {'M', 'S', 'V', 'D'};
constexpr std::uint32_t kCollectionVersion = 1;

template <class T>
T to_little(T v) {
    if constexpr (std::endian::native == std::endian::big) {
        auto bytes = std::bit_cast<std::array<unsigned char, sizeof(T)>>(v);
        std::reverse(bytes.begin(), bytes.end());
        return std::bit_cast<T>(bytes);
    }
    return v;
}

class Writer {
public:
    void magic(const char (&m)[4]) { out_.append(m, 4); }

    template <class T>
    void scalar(T v) {
        const T le = to_little(v);
        char buf[sizeof(T)];
        std::memcpy(buf, &le, sizeof(T));
        out_.append(buf, sizeof(T));
    }

    void id(const std::string& s) {
        if (s.size() > std::numeric_limits<std::uint32_t>::max()) {
            throw InvalidArgument("id too long to encode");
        }
        scalar<std::uint32_t>(static_cast<std::uint32_t>(s.size()));
        out_.append(s);
    }

    void matrix(const Matrix& M) {
        if constexpr (std::endian::native == std::endian::little) {
            out_.append(reinterpret_cast<const char*>(M.data()),
                        static_cast<std::size_t>(M.size()) * sizeof(double));
        } else {
            for (Eigen::Index i = 0; i < M.size(); ++i) {
                scalar(M.data()[i]);
            }
        }
    }

    std::string take() { return std::move(out_); }

private:
    std::string out_;
};

class Reader {
public:
    Reader(const std::string& bytes, const char* what) : bytes_(bytes), what_(what) {}

    void magic(const char (&m)[4]) {
        need(4);
        if (std::memcmp(bytes_.data() + pos_, m, 4) != 0) {
            fail("bad magic");
        }
        pos_ += 4;
    }

    template <class T>
    T scalar() {
        need(sizeof(T));
        T v;
        std::memcpy(&v, bytes_.data() + pos_, sizeof(T));
        pos_ += sizeof(T);
        return to_little(v);
    }

    std::string id() {
        const auto len = scalar<std::uint32_t>();
        need(len);
        std::string s = bytes_.substr(pos_, len);
        pos_ += len;
        return s;
    }

    std::size_t count() {
        const auto n = scalar<std::uint64_t>();
        if (n > bytes_.size()) {
            fail("implausible count " + std::to_string(n));
        }
        return static_cast<std::size_t>(n);
    }

    Matrix matrix(std::size_t rows, std::size_t cols) {
        if (cols != 0 && rows > (bytes_.size() - pos_) / sizeof(double) / cols) {
            fail("truncated payload");
        }
        Matrix M(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
        const std::size_t n = rows * cols;
        need(n * sizeof(double));
        std::memcpy(M.data(), bytes_.data() + pos_, n * sizeof(double));
        if constexpr (std::endian::native == std::endian::big) {
            for (std::size_t i = 0; i < n; ++i) {
                M.data()[i] = to_little(M.data()[i]);
            }
        }
        pos_ += n * sizeof(double);
        if (!M.allFinite()) {
            fail("non-finite value in payload");
        }
        return M;
    }

    void finish() {
        if (pos_ != bytes_.size()) {
            fail("trailing bytes after payload");
        }
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw FormatError(std::string(what_) + ": " + msg);
    }

private:
    void need(std::size_t n) const {
        if (bytes_.size() - pos_ < n) {
            fail("truncated payload");
        }
    }

    const std::string& bytes_;
    const char* what_;
    std::size_t pos_ = 0;
};

}  // namespace

std::string encode_collection(const Collection& coll) {
    Writer w;
    w.magic(kCollectionMagic);
    w.scalar<std::uint32_t>(kCollectionVersion);
    w.scalar<std::uint64_t>(static_cast<std::uint64_t>(coll.rows()));
    w.scalar<std::uint64_t>(coll.size());
    for (const Block& b : coll.blocks()) {
        w.id(b.id());
        w.scalar<std::uint64_t>(static_cast<std::uint64_t>(b.cols()));
    }
    for (const Block& b : coll.blocks()) {
        w.matrix(b.data());
    }
    return w.take();
}

Collection decode_collection(const std::string& bytes) {
    Reader r(bytes, "mcol");
    r.magic(kCollectionMagic);
    if (const auto v = r.scalar<std::uint32_t>(); v != kCollectionVersion) {
        r.fail("unsupported version " + std::to_string(v));
    }
    const std::size_t m = r.count();
    const std::size_t n = r.count();
    std::vector<std::pair<std::string, std::size_t>> header;
    std::set<std::string> ids;
    for (std::size_t i = 0; i < n; ++i) {
        std::string id = r.id();
        const std::size_t cols = r.count();
        if (!ids.insert(id).second) {
            r.fail("duplicate block id '" + id + "'");
        }
        header.emplace_back(std::move(id), cols);
    }
    if (n > 0 && m == 0) {
        r.fail("zero row count");
    }
    std::vector<Block> blocks;
    blocks.reserve(n);
    for (auto& [id, cols] : header) {
        Matrix data = r.matrix(m, cols);
        if (cols == 0) {
            r.fail("block '" + id + "' has no columns");
        }
        blocks.emplace_back(std::move(id), std::move(data));
    }
    r.finish();
    return Collection(std::move(blocks));
}

std::string encode_store(const CompressedStore& store) {
    Writer w;
    w.magic(kStoreMagic);
    w.scalar<std::uint32_t>(store.format_version);
    w.scalar<std::uint64_t>(static_cast<std::uint64_t>(store.rows));
    w.scalar<std::uint64_t>(store.clusters.size());
    for (const CompressedCluster& c : store.clusters) {
        w.id(c.id);
        w.scalar<std::uint64_t>(c.rank);
        w.scalar<std::uint64_t>(c.members.size());
        for (const StoreMember& mem : c.members) {
            w.id(mem.block_id);
            w.scalar<std::uint64_t>(mem.cols);
        }
    }
    for (const CompressedCluster& c : store.clusters) {
        if (c.U_tilde.rows() != store.rows || c.U_tilde.cols() != static_cast<Eigen::Index>(c.rank) ||
            c.V.rows() != static_cast<Eigen::Index>(c.total_cols()) || c.V.cols() != c.U_tilde.cols()) {
            throw InvalidArgument("cluster '" + c.id + "' factor shapes are inconsistent");
        }
        w.matrix(c.U_tilde);
        w.matrix(c.V);
    }
    return w.take();
}

CompressedStore decode_store(const std::string& bytes) {
    Reader r(bytes, "msvd");
    r.magic(kStoreMagic);
    CompressedStore store;
    store.format_version = r.scalar<std::uint32_t>();
    if (store.format_version != CompressedStore::kFormatVersion) {
        r.fail("unsupported version " + std::to_string(store.format_version));
    }
    const std::size_t m = r.count();
    store.rows = static_cast<Eigen::Index>(m);
    const std::size_t nclusters = r.count();
    std::set<std::string> ids;
    for (std::size_t c = 0; c < nclusters; ++c) {
        CompressedCluster cl;
        cl.id = r.id();
        cl.rank = r.count();
        const std::size_t nmem = r.count();
        for (std::size_t i = 0; i < nmem; ++i) {
            StoreMember mem{r.id(), 0};
            mem.cols = r.count();
            if (!ids.insert(mem.block_id).second) {
                r.fail("duplicate block id '" + mem.block_id + "'");
            }
            cl.members.push_back(std::move(mem));
        }
        store.clusters.push_back(std::move(cl));
    }
    for (CompressedCluster& cl : store.clusters) {
        cl.U_tilde = r.matrix(m, cl.rank);
        cl.V = r.matrix(cl.total_cols(), cl.rank);
    }
    r.finish();
    return store;
}

std::string encode_raw_matrix(const Matrix& M) {
    Writer w;
    w.scalar<std::uint64_t>(static_cast<std::uint64_t>(M.rows()));
    w.scalar<std::uint64_t>(static_cast<std::uint64_t>(M.cols()));
    w.matrix(M);
    return w.take();
}

Matrix decode_raw_matrix(const std::string& bytes) {
    Reader r(bytes, "matrix");
    const std::size_t rows = r.count();
    const std::size_t cols = r.count();
    Matrix M = r.matrix(rows, cols);
    r.finish();
    return M;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot open '" + path.string() + "' for reading");
    }
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw Error("cannot open '" + path.string() + "' for writing");
    }
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw Error("write to '" + path.string() + "' failed");
    }
}

void write_collection(const Collection& coll, const std::filesystem::path& path) {
    write_file(path, encode_collection(coll));
}

Collection read_collection(const std::filesystem::path& path) {
    return decode_collection(read_file(path));
}

void write_store(const CompressedStore& store, const std::filesystem::path& path) {
    write_file(path, encode_store(store));
}

CompressedStore read_store(const std::filesystem::path& path) {
    return decode_store(read_file(path));
}

void write_raw_matrix(const Matrix& M, const std::filesystem::path& path) {
    write_file(path, encode_raw_matrix(M));
}

Matrix read_raw_matrix(const std::filesystem::path& path) {
    return decode_raw_matrix(read_file(path));
}

}  // namespace lrc
