#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "pkp/error.hpp"
#include "pkp/instance.hpp"
#include "pkp/linalg.hpp"

namespace pkp {

namespace {

void write_row(std::ostream& out, std::span<const Elem> values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i != 0) out << ' ';
        out << values[i];
    }
    out << '\n';
}

bool next_content_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") != std::string::npos) return true;
    }
    return false;
}

std::vector<std::uint64_t> parse_numbers(const std::string& line, std::size_t expected, const char* what) {
    std::istringstream ls(line);
    std::vector<std::uint64_t> values;
    std::string token;
    while (ls >> token) {
        if (token.find_first_not_of("0123456789") != std::string::npos) {
            throw FormatError(std::string(what) + ": '" + token + "' is not a non-negative integer");
        }
        values.push_back(std::stoull(token));
    }
    if (values.size() != expected) {
        throw FormatError(std::string(what) + ": expected " + std::to_string(expected) + " values, got " +
                          std::to_string(values.size()));
    }
    return values;
}

}  // namespace

void write_instance(std::ostream& out, const PkpInstance& instance) {
    out << "PKP " << instance.field.modulus() << ' ' << instance.n << ' ' << instance.m << '\n';
    for (std::size_t i = 0; i < instance.m; ++i) write_row(out, instance.A.row(i));
    write_row(out, instance.c);
    if (instance.planted) {
        out << "SOLUTION";
        for (auto v : instance.planted->mapping()) out << ' ' << v + 1;
        out << '\n';
    }
}

PkpInstance read_instance(std::istream& in) {
    std::string line;
    if (!next_content_line(in, line)) throw FormatError("empty instance file");
    std::istringstream header(line);
    std::string magic;
    std::uint64_t q = 0, n = 0, m = 0;
    if (!(header >> magic >> q >> n >> m) || magic != "PKP") {
        throw FormatError("header must read 'PKP q n m'");
    }
    std::string extra;
    if (header >> extra) throw FormatError("trailing tokens in header");
    if (q >= (1ULL << 31)) throw InvalidParameters("q out of range");
    const PrimeField field(static_cast<std::uint32_t>(q));
    if (m < 1 || m >= n) throw InvalidParameters("need 1 <= m < n");

    Matrix A(field, m, n);
    for (std::size_t i = 0; i < m; ++i) {
        if (!next_content_line(in, line)) throw FormatError("missing row " + std::to_string(i + 1) + " of A");
        const auto values = parse_numbers(line, n, "row of A");
        for (std::size_t j = 0; j < n; ++j) {
            if (values[j] >= q) throw FormatError("matrix entry not reduced mod q");
            A(i, j) = static_cast<Elem>(values[j]);
        }
    }
    if (!next_content_line(in, line)) throw FormatError("missing vector c");
    const auto cv = parse_numbers(line, n, "vector c");
    Vector c(n);
    for (std::size_t j = 0; j < n; ++j) {
        if (cv[j] >= q) throw FormatError("entry of c not reduced mod q");
        c[j] = static_cast<Elem>(cv[j]);
    }

    std::optional<Permutation> planted;
    if (next_content_line(in, line)) {
        std::istringstream ls(line);
        std::string keyword;
        ls >> keyword;
        if (keyword != "SOLUTION") throw FormatError("unexpected line after c: expected SOLUTION");
        std::string rest;
        std::getline(ls, rest);
        if (rest.find_first_not_of(" \t") == std::string::npos) {
            if (!next_content_line(in, rest)) throw FormatError("SOLUTION without indices");
        }
        const auto idx = parse_numbers(rest, n, "SOLUTION");
        std::vector<std::size_t> map(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (idx[i] < 1 || idx[i] > n) throw FormatError("SOLUTION index out of range");
            map[i] = idx[i] - 1;
        }
        planted = Permutation(std::move(map));
        if (next_content_line(in, line)) throw FormatError("trailing content after SOLUTION");
    }
    if (rank(A) != m) throw InvalidParameters("A is not full rank");
    Vector sorted = c;
    std::ranges::sort(sorted);
    if (std::ranges::adjacent_find(sorted) != sorted.end()) throw InvalidParameters("c has repeated entries");
    return PkpInstance{field, n, m, std::move(A), std::move(c), std::move(planted)};
}

}  // namespace pkp
