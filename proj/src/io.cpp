#include "colog/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace colog {

namespace {

[[noreturn]] void io_fail(const std::filesystem::path& path, std::size_t line,
                          const std::string& msg) {
    std::ostringstream os;
    os << path.string() << ":" << line << ": " << msg;
    throw std::runtime_error(os.str());
}

std::optional<Value> parse_u32(std::string_view field) {
    if (field.empty()) return std::nullopt;
    std::uint64_t v = 0;
    auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc{} || p != field.data() + field.size()) return std::nullopt;
    if (v > std::numeric_limits<Value>::max()) return std::nullopt;
    return static_cast<Value>(v);
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        std::size_t tab = line.find('\t', start);
        if (tab == std::string_view::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, tab - start));
        start = tab + 1;
    }
}

} // namespace

LoadResult load_facts(const std::filesystem::path& path, std::size_t arity, Dictionary& dict) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open facts file: " + path.string());

    LoadResult result;
    std::string line;
    std::size_t line_no = 0;
    bool mode_known = false;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        auto fields = split_fields(line);
        if (fields.size() != arity) {
            std::ostringstream os;
            os << "expected " << arity << " tab-separated fields, got " << fields.size();
            io_fail(path, line_no, os.str());
        }

        if (!mode_known) {
            result.dict_encoded = false;
            for (auto f : fields)
                if (!parse_u32(f)) result.dict_encoded = true;
            mode_known = true;
        }

        Row row(arity);
        for (std::size_t j = 0; j < arity; ++j) {
            if (result.dict_encoded) {
                row[j] = dict.encode(fields[j]);
            } else {
                auto v = parse_u32(fields[j]);
                if (!v)
                    io_fail(path, line_no,
                            "field '" + std::string(fields[j]) +
                                "' is not an unsigned 32-bit integer (file is in integer mode)");
                row[j] = *v;
            }
        }
        result.rows.push_back(std::move(row));
    }
    return result;
}

void dump_relation(const Version& ver, const Dictionary* dict, std::ostream& os) {
    if (dict) {
        std::vector<std::vector<std::string>> rows(ver.rows());
        for (std::size_t i = 0; i < ver.rows(); ++i) {
            rows[i].reserve(ver.arity());
            for (std::size_t j = 0; j < ver.arity(); ++j)
                rows[i].push_back(dict->decode(ver.col(j).value_at(static_cast<TupleId>(i))));
        }
        std::sort(rows.begin(), rows.end());
        for (const auto& r : rows) {
            for (std::size_t j = 0; j < r.size(); ++j) {
                if (j) os << '\t';
                os << r[j];
            }
            os << '\n';
        }
        return;
    }
    std::vector<Row> rows = ver.reconstruct();
    std::sort(rows.begin(), rows.end());
    for (const Row& r : rows) {
        for (std::size_t j = 0; j < r.size(); ++j) {
            if (j) os << '\t';
            os << r[j];
        }
        os << '\n';
    }
}

void dump_relation(const Version& ver, const Dictionary* dict,
                   const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path.string());
    dump_relation(ver, dict, out);
}

void resolve_strings(Program& program, Dictionary& dict) {
    auto resolve_term = [&](Term& t) {
        if (t.kind != Term::Kind::StrConst) return;
        t.number = dict.encode(t.text);
        t.kind = Term::Kind::IntConst;
        t.text.clear();
    };
    for (Atom& f : program.facts)
        for (Term& t : f.args) resolve_term(t);
    for (Rule& r : program.rules) {
        for (Term& t : r.head.args) resolve_term(t);
        for (Atom& a : r.body)
            for (Term& t : a.args) resolve_term(t);
    }
}

FactMap program_facts(const Program& program) {
    FactMap facts;
    for (const Atom& f : program.facts) {
        Row row;
        row.reserve(f.args.size());
        for (const Term& t : f.args) {
            if (t.kind == Term::Kind::StrConst)
                throw std::invalid_argument("program_facts: unresolved string constant");
            row.push_back(t.number);
        }
        facts[f.relation].push_back(std::move(row));
    }
    return facts;
}

} // namespace colog
