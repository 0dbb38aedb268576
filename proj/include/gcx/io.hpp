#pragma once

// On-disk cache, matrix serialization and graph text input.
//
// Cache layout (one directory, flat):
//   basis-<key>.bin    one per (spec, slice)
//   matrix-<key>.bin   one per (operator, source spot, target spot)
// <key> is the 64-bit FNV-1a hash of the canonical serialization, in hex. Each file repeats
// the full serialization, so a hash collision reads as a miss. Writes go to a temporary
// file in the same directory and are renamed into place.
//
// Binary formats, all integers little-endian:
//   basis:  "GCXB" u32 version | str spec | i32 v e h | u32 count | count x str encoding
//   matrix: "GCXM" u32 version | str key | u32 rows | u32 cols | u64 nnz |
//           nnz x (u32 row | u32 col | int numerator | int denominator)
//   str = u32 length + bytes; int = u8 sign (0 or 1 for negative) + u32 length + magnitude
//   bytes, least significant first.

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "assemble.hpp"
#include "enumerate.hpp"
#include "sparse.hpp"

namespace gcx {

inline constexpr const char* kCacheEnv = "GCX_CACHE_DIR";
inline constexpr std::uint32_t kFileVersion = 1;

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string hex64(std::uint64_t x) {
    static const char* digits = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, x >>= 4) s[static_cast<std::size_t>(i)] = digits[x & 15];
    return s;
}

namespace detail {

class Writer {
public:
    void u8(std::uint8_t x) { buf_.push_back(static_cast<char>(x)); }
    void u32(std::uint32_t x) {
        for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(x >> (8 * i)));
    }
    void u64(std::uint64_t x) {
        for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(x >> (8 * i)));
    }
    void i32(std::int32_t x) { u32(static_cast<std::uint32_t>(x)); }
    void str(const std::string& s) {
        u32(static_cast<std::uint32_t>(s.size()));
        buf_ += s;
    }
    void raw(const std::string& s) { buf_ += s; }
    void integer(const Integer& z) {
        u8(z < 0 ? 1 : 0);
        std::size_t count = 0;
        const std::size_t bytes = (mpz_sizeinbase(z.get_mpz_t(), 2) + 7) / 8;
        std::string mag(bytes, '\0');
        if (z != 0) mpz_export(mag.data(), &count, -1, 1, -1, 0, z.get_mpz_t());
        mag.resize(count);
        str(mag);
    }
    const std::string& bytes() const { return buf_; }

private:
    std::string buf_;
};

class Reader {
public:
    explicit Reader(std::string data) : data_(std::move(data)) {}
    std::uint8_t u8() {
        need(1);
        return static_cast<std::uint8_t>(data_[pos_++]);
    }
    std::uint32_t u32() {
        std::uint32_t x = 0;
        for (int i = 0; i < 4; ++i) x |= static_cast<std::uint32_t>(u8()) << (8 * i);
        return x;
    }
    std::uint64_t u64() {
        std::uint64_t x = 0;
        for (int i = 0; i < 8; ++i) x |= static_cast<std::uint64_t>(u8()) << (8 * i);
        return x;
    }
    std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
    std::string str() {
        const std::uint32_t n = u32();
        need(n);
        std::string s = data_.substr(pos_, n);
        pos_ += n;
        return s;
    }
    std::string raw(std::size_t n) {
        need(n);
        std::string s = data_.substr(pos_, n);
        pos_ += n;
        return s;
    }
    Integer integer() {
        const bool neg = u8() != 0;
        const std::string mag = str();
        Integer z = 0;
        if (!mag.empty()) mpz_import(z.get_mpz_t(), mag.size(), -1, 1, -1, 0, mag.data());
        return neg ? Integer(-z) : z;
    }
    bool done() const { return pos_ == data_.size(); }

private:
    void need(std::size_t n) const {
        if (pos_ + n > data_.size()) throw std::runtime_error("truncated file");
    }
    std::string data_;
    std::size_t pos_ = 0;
};

inline std::optional<std::string> read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline void write_atomic(const std::filesystem::path& p, const std::string& bytes) {
    static std::atomic<unsigned> counter{0};
    std::random_device rd;
    const std::filesystem::path tmp =
        p.parent_path() / (p.filename().string() + ".tmp" + std::to_string(rd()) + "." + std::to_string(counter++));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, p);
}

}  // namespace detail

// ---- matrix serialization ----

inline std::string matrix_to_binary(const SparseMatrix& m, const std::string& key) {
    SparseMatrix a = m;
    a.normalize();
    detail::Writer w;
    w.raw("GCXM");
    w.u32(kFileVersion);
    w.str(key);
    w.u32(static_cast<std::uint32_t>(a.rows()));
    w.u32(static_cast<std::uint32_t>(a.cols()));
    w.u64(a.nnz());
    for (const Triplet& t : a.entries()) {
        w.u32(static_cast<std::uint32_t>(t.row));
        w.u32(static_cast<std::uint32_t>(t.col));
        w.integer(t.value.get_num());
        w.integer(t.value.get_den());
    }
    return w.bytes();
}

// Returns the matrix and the key stored with it.
inline std::pair<SparseMatrix, std::string> matrix_from_binary(const std::string& bytes) {
    detail::Reader r(bytes);
    if (r.raw(4) != "GCXM") throw std::runtime_error("not a matrix file");
    if (r.u32() != kFileVersion) throw std::runtime_error("unsupported matrix file version");
    std::string key = r.str();
    const std::uint32_t rows = r.u32(), cols = r.u32();
    const std::uint64_t nnz = r.u64();
    SparseMatrix m(static_cast<int>(rows), static_cast<int>(cols));
    for (std::uint64_t i = 0; i < nnz; ++i) {
        const int row = static_cast<int>(r.u32());
        const int col = static_cast<int>(r.u32());
        const Integer num = r.integer();
        const Integer den = r.integer();
        if (den <= 0) throw std::runtime_error("bad denominator in matrix file");
        Rational q(num, den);
        q.canonicalize();
        m.add(row, col, q);
    }
    if (!r.done()) throw std::runtime_error("trailing bytes in matrix file");
    m.normalize();
    return {std::move(m), std::move(key)};
}

inline nlohmann::json matrix_to_json(const SparseMatrix& m, const std::string& source, const std::string& target) {
    SparseMatrix a = m;
    a.normalize();
    nlohmann::json j;
    j["source"] = source;
    j["target"] = target;
    j["rows"] = a.rows();
    j["cols"] = a.cols();
    nlohmann::json entries = nlohmann::json::array();
    for (const Triplet& t : a.entries()) entries.push_back({t.row, t.col, t.value.get_str()});
    j["entries"] = std::move(entries);
    return j;
}

inline SparseMatrix matrix_from_json(const nlohmann::json& j) {
    SparseMatrix m(j.at("rows").get<int>(), j.at("cols").get<int>());
    for (const auto& e : j.at("entries")) m.add(e.at(0).get<int>(), e.at(1).get<int>(), parse_rational(e.at(2).get<std::string>()));
    m.normalize();
    return m;
}

// ---- cache ----

struct CacheStats {
    long basis_files = 0;
    long matrix_files = 0;
    long temp_files = 0;
    long other_files = 0;
    std::uintmax_t bytes = 0;
};

class Cache {
public:
    explicit Cache(std::filesystem::path dir) : dir_(std::move(dir)) { std::filesystem::create_directories(dir_); }

    // Directory from the environment, or nullopt when unset.
    static std::optional<std::filesystem::path> dir_from_env() {
        const char* d = std::getenv(kCacheEnv);
        if (!d || !*d) return std::nullopt;
        return std::filesystem::path(d);
    }

    const std::filesystem::path& dir() const { return dir_; }

    std::filesystem::path basis_path(const ComplexSpec& spec, const GradedSlice& s) const {
        return dir_ / ("basis-" + hex64(fnv1a(basis_key(spec, s))) + ".bin");
    }
    std::filesystem::path matrix_path(const std::string& key) const {
        return dir_ / ("matrix-" + hex64(fnv1a(key)) + ".bin");
    }

    static std::string basis_key(const ComplexSpec& spec, const GradedSlice& s) { return to_string(spec) + to_string(s); }

    std::optional<std::vector<std::string>> load_basis(const ComplexSpec& spec, const GradedSlice& s) const {
        auto bytes = detail::read_file(basis_path(spec, s));
        if (!bytes) return std::nullopt;
        try {
            detail::Reader r(std::move(*bytes));
            if (r.raw(4) != "GCXB" || r.u32() != kFileVersion) return std::nullopt;
            if (r.str() != to_string(spec)) return std::nullopt;
            const GradedSlice t{r.i32(), r.i32(), r.i32()};
            if (!(t == s)) return std::nullopt;
            const std::uint32_t n = r.u32();
            std::vector<std::string> encs;
            encs.reserve(n);
            for (std::uint32_t i = 0; i < n; ++i) encs.push_back(r.str());
            if (!r.done()) return std::nullopt;
            return encs;
        } catch (const std::runtime_error&) {
            return std::nullopt;
        }
    }

    void save_basis(const ComplexSpec& spec, const GradedSlice& s, const std::vector<std::string>& encs) const {
        detail::Writer w;
        w.raw("GCXB");
        w.u32(kFileVersion);
        w.str(to_string(spec));
        w.i32(s.v);
        w.i32(s.e);
        w.i32(s.h);
        w.u32(static_cast<std::uint32_t>(encs.size()));
        for (const std::string& e : encs) w.str(e);
        detail::write_atomic(basis_path(spec, s), w.bytes());
    }

    std::optional<SparseMatrix> load_matrix(const std::string& key) const {
        auto bytes = detail::read_file(matrix_path(key));
        if (!bytes) return std::nullopt;
        try {
            auto [m, stored] = matrix_from_binary(*bytes);
            if (stored != key) return std::nullopt;
            return m;
        } catch (const std::runtime_error&) {
            return std::nullopt;
        }
    }

    void save_matrix(const std::string& key, const SparseMatrix& m) const {
        detail::write_atomic(matrix_path(key), matrix_to_binary(m, key));
    }

    CacheStats stats() const {
        CacheStats st;
        for (const auto& e : std::filesystem::directory_iterator(dir_)) {
            if (!e.is_regular_file()) continue;
            const std::string name = e.path().filename().string();
            st.bytes += e.file_size();
            if (name.find(".tmp") != std::string::npos) ++st.temp_files;
            else if (name.rfind("basis-", 0) == 0) ++st.basis_files;
            else if (name.rfind("matrix-", 0) == 0) ++st.matrix_files;
            else ++st.other_files;
        }
        return st;
    }

    // Removes leftover temporary files and files with a foreign header; returns the count.
    long gc() const {
        long removed = 0;
        for (const auto& e : std::filesystem::directory_iterator(dir_)) {
            if (!e.is_regular_file()) continue;
            const std::string name = e.path().filename().string();
            bool drop = name.find(".tmp") != std::string::npos;
            if (!drop && (name.rfind("basis-", 0) == 0 || name.rfind("matrix-", 0) == 0)) {
                auto bytes = detail::read_file(e.path());
                const std::string magic = name[0] == 'b' ? "GCXB" : "GCXM";
                drop = !bytes || bytes->size() < 8 || bytes->substr(0, 4) != magic;
                if (!drop) {
                    detail::Reader r(bytes->substr(4, 4));
                    drop = r.u32() != kFileVersion;
                }
            }
            if (drop) {
                std::filesystem::remove(e.path());
                ++removed;
            }
        }
        return removed;
    }

    long clear() const {
        long removed = 0;
        for (const auto& e : std::filesystem::directory_iterator(dir_)) {
            const std::string name = e.path().filename().string();
            if (e.is_regular_file() && (name.rfind("basis-", 0) == 0 || name.rfind("matrix-", 0) == 0)) {
                std::filesystem::remove(e.path());
                ++removed;
            }
        }
        return removed;
    }

private:
    std::filesystem::path dir_;
};

// Routes basis enumeration and matrix assembly through the cache. Failed writes are
// ignored: the cache only saves time.
inline void install_cache(const Cache& cache) {
    const Cache c = cache;
    basis_store().load = [c](const ComplexSpec& spec, const GradedSlice& s) { return c.load_basis(spec, s); };
    basis_store().save = [c](const ComplexSpec& spec, const GradedSlice& s, const std::vector<std::string>& encs) {
        try {
            c.save_basis(spec, s, encs);
        } catch (const std::exception&) {
        }
    };
    matrix_store().load = [c](const std::string& key) { return c.load_matrix(key); };
    matrix_store().save = [c](const std::string& key, const SparseMatrix& m) {
        try {
            c.save_matrix(key, m);
        } catch (const std::exception&) {
        }
    };
}

inline void uninstall_cache() {
    basis_store() = {};
    matrix_store() = {};
}

// ---- graph text ----

// Parses the describe() format "v=3 e=[0-1,1-2] h=[0]"; "e=" and "h=" are optional.
inline LabeledGraph parse_graph(const std::string& text) {
    LabeledGraph g;
    std::istringstream in(text);
    std::string tok;
    bool have_v = false;
    auto list = [](const std::string& body) {
        std::string s = body;
        if (!s.empty() && s.front() == '[') s.erase(0, 1);
        if (!s.empty() && s.back() == ']') s.pop_back();
        std::vector<std::string> items;
        std::string cur;
        for (char ch : s) {
            if (ch == ',') {
                if (!cur.empty()) items.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        if (!cur.empty()) items.push_back(cur);
        return items;
    };
    while (in >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad graph token: " + tok);
        const std::string k = tok.substr(0, eq), val = tok.substr(eq + 1);
        if (k == "v") {
            g.v = std::stoi(val);
            have_v = true;
        } else if (k == "e") {
            for (const std::string& it : list(val)) {
                const auto d = it.find('-');
                if (d == std::string::npos) throw std::invalid_argument("bad edge: " + it);
                g.edges.push_back({std::stoi(it.substr(0, d)), std::stoi(it.substr(d + 1))});
            }
        } else if (k == "h") {
            for (const std::string& it : list(val)) g.hairs.push_back(std::stoi(it));
        } else {
            throw std::invalid_argument("bad graph token: " + tok);
        }
    }
    if (!have_v) throw std::invalid_argument("graph text needs v=");
    g.validate();
    return g;
}

}  // namespace gcx
