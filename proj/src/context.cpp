#include "vsp/context.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vsp/error.hpp"

namespace vsp {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& message) { fail(ErrorKind::ContextFormat, message); }

const json& member(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing key '") + key + "'");
    return j.at(key);
}

CardinalSymbol cardinal_from(const json& j) {
    if (j.is_number_unsigned()) return CardinalSymbol::finite(j.get<std::uint64_t>());
    if (j.is_string() && j.get<std::string>() == "aleph0") return CardinalSymbol::aleph0();
    bad("cardinal must be a natural or \"aleph0\", got " + j.dump());
}

json cardinal_to(const CardinalSymbol& c) {
    if (c.is_aleph0()) return "aleph0";
    return c.value();
}

std::uint64_t natural_from(const json& j) {
    if (!j.is_number_unsigned()) bad("expected a natural, got " + j.dump());
    return j.get<std::uint64_t>();
}

Scalar scalar_from(const json& j, const FieldCtx& field) {
    if (!j.is_string()) bad("scalars are written as strings, got " + j.dump());
    return field.parse_scalar(j.get<std::string>());
}

ModelElement element_from(const json& j, const FieldCtx& field) {
    if (!j.is_object()) bad("constant must be an object, got " + j.dump());
    ModelElement e;
    auto add = [&](Coord c, const json& s) {
        if (e.entries().count(c)) bad("repeated coordinate in constant");
        Scalar v = scalar_from(s, field);
        if (!v.is_zero()) e.set(c, v);
    };
    if (j.contains("axis")) {
        for (const auto& t : j.at("axis")) {
            if (!t.is_array() || t.size() != 3) bad("axis entries are [axis, coord, scalar]");
            add(Coord{false, natural_from(t[0]), natural_from(t[1])}, t[2]);
        }
    }
    if (j.contains("free")) {
        for (const auto& t : j.at("free")) {
            if (!t.is_array() || t.size() != 2) bad("free entries are [coord, scalar]");
            add(Coord{true, 0, natural_from(t[0])}, t[1]);
        }
    }
    return e;
}

json element_to(const ModelElement& e) {
    json axis = json::array();
    json free = json::array();
    for (const auto& [c, s] : e.entries()) {
        if (c.free) {
            free.push_back({c.coord, s.to_string()});
        } else {
            axis.push_back({c.axis, c.coord, s.to_string()});
        }
    }
    return {{"axis", axis}, {"free", free}};
}

}  // namespace

Model parse_context(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        bad(e.what());
    }
    const json& fj = member(doc, "field");
    if (!fj.is_string()) bad("field must be a string");
    FieldCtx field = FieldCtx::parse(fj.get<std::string>());

    const json& dj = member(doc, "descriptor");
    ModelDescriptor d;
    d.f_codim = cardinal_from(member(dj, "f_codim"));
    const json& axes = member(dj, "axes");
    if (!axes.is_array()) bad("axes must be a list");
    for (const auto& a : axes) {
        auto dim = cardinal_from(member(a, "dim"));
        if (d.axis_census.count(dim)) bad("dimension " + dim.to_string() + " listed twice");
        d.axis_census[dim] = cardinal_from(member(a, "count"));
    }
    Model model = Model::canonical(d, field);

    if (doc.contains("constants")) {
        const json& cj = doc.at("constants");
        if (!cj.is_object()) bad("constants must be an object");
        for (const auto& [name, value] : cj.items()) model.define_constant(name, element_from(value, field));
    }
    return model;
}

std::string serialize_context(const Model& model) {
    json axes = json::array();
    for (const auto& [dim, count] : model.descriptor().axis_census) {
        axes.push_back({{"dim", cardinal_to(dim)}, {"count", cardinal_to(count)}});
    }
    json constants = json::object();
    for (const auto& [name, value] : model.constants()) constants[name] = element_to(value);
    json doc = {{"field", model.field().name()},
                {"descriptor", {{"f_codim", cardinal_to(model.descriptor().f_codim)}, {"axes", axes}}},
                {"constants", constants}};
    return doc.dump(2) + "\n";
}

Model load_context(const std::string& path) {
    std::ifstream in(path);
    if (!in) bad("cannot read context file '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_context(text.str());
}

ModelElement parse_element(std::string_view text, const FieldCtx& field) {
    std::size_t pos = 0;
    auto error = [&](const std::string& message) -> ParseError {
        return ParseError(ErrorKind::ParseError, message, pos);
    };
    auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto natural = [&] {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) throw error("expected a natural number");
        return std::stoull(std::string(text.substr(start, pos - start)));
    };
    auto expect = [&](char c) {
        skip();
        if (pos >= text.size() || text[pos] != c) throw error(std::string("expected '") + c + "'");
        ++pos;
    };

    auto first = text.find_first_not_of(" \t\n");
    auto last = text.find_last_not_of(" \t\n");
    if (first != std::string_view::npos && text.substr(first, last - first + 1) == "0") return {};
    ModelElement e;
    while (true) {
        skip();
        Scalar coeff = field.one();
        if (pos < text.size() && (text[pos] == '-' || std::isdigit(static_cast<unsigned char>(text[pos])))) {
            std::size_t start = pos;
            if (text[pos] == '-') ++pos;
            while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '/')) ++pos;
            std::string_view lit = text.substr(start, pos - start);
            if (lit == "-") {
                coeff = -field.one();
            } else {
                coeff = field.parse_scalar(lit);
                expect('*');
            }
            skip();
        }
        if (pos >= text.size()) throw error("expected e(...) or f(...)");
        ModelElement unit;
        if (text[pos] == 'e') {
            ++pos;
            expect('(');
            skip();
            if (pos >= text.size() || text[pos] != 'A') throw error("expected axis name A<n>");
            ++pos;
            auto axis = natural();
            expect(',');
            skip();
            auto coord = natural();
            expect(')');
            unit = e_axis(field, axis, coord);
        } else if (text[pos] == 'f') {
            ++pos;
            expect('(');
            skip();
            auto coord = natural();
            expect(')');
            unit = e_free(field, coord);
        } else {
            throw error("expected e(...) or f(...)");
        }
        e += coeff * unit;
        skip();
        if (pos == text.size()) break;
        expect('+');
    }
    return e;
}

}  // namespace vsp
