#pragma once

#include <algorithm>
#include <cstdio>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace levyig {

/// Deterministic JSON output: object keys sorted, doubles at 17 significant
/// digits via a fixed "%.17g" rendering, so identical inputs serialize to
/// identical bytes.
class JsonValue {
  public:
    JsonValue() : v_(nullptr) {}
    JsonValue(std::nullptr_t) : v_(nullptr) {}
    JsonValue(bool b) : v_(b) {}
    JsonValue(double d) : v_(d) {}
    JsonValue(int i) : v_(static_cast<long long>(i)) {}
    JsonValue(long long i) : v_(i) {}
    JsonValue(unsigned long long i) : v_(static_cast<long long>(i)) {}
    JsonValue(const char* s) : v_(std::string(s)) {}
    JsonValue(std::string s) : v_(std::move(s)) {}

    static JsonValue array() {
        JsonValue j;
        j.v_ = Array{};
        return j;
    }
    static JsonValue object() {
        JsonValue j;
        j.v_ = Object{};
        return j;
    }
    JsonValue& push_back(JsonValue item) {
        std::get<Array>(v_).push_back(std::move(item));
        return *this;
    }
    JsonValue& set(const std::string& key, JsonValue value) {
        std::get<Object>(v_).emplace_back(key, std::move(value));
        return *this;
    }

    std::string dump(int indent = 0) const {
        std::string out;
        write(out, indent, 0);
        if (indent > 0) out.push_back('\n');
        return out;
    }

  private:
    struct Array : std::vector<JsonValue> {};
    struct Object : std::vector<std::pair<std::string, JsonValue>> {};
    std::variant<std::nullptr_t, bool, long long, double, std::string, Array, Object> v_;

    static void write_escaped(std::string& out, const std::string& s) {
        out.push_back('"');
        for (char c : s) {
            switch (c) {
                case '"': out += "\\\""; break;
                case '\\': out += "\\\\"; break;
                case '\n': out += "\\n"; break;
                case '\t': out += "\\t"; break;
                case '\r': out += "\\r"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof buf, "\\u%04x", c);
                        out += buf;
                    } else {
                        out.push_back(c);
                    }
            }
        }
        out.push_back('"');
    }

    void write(std::string& out, int indent, int depth) const {
        auto pad = [&](int d) {
            if (indent > 0) {
                out.push_back('\n');
                out.append(static_cast<std::size_t>(indent * d), ' ');
            }
        };
        if (std::holds_alternative<std::nullptr_t>(v_)) {
            out += "null";
        } else if (auto* b = std::get_if<bool>(&v_)) {
            out += *b ? "true" : "false";
        } else if (auto* i = std::get_if<long long>(&v_)) {
            out += std::to_string(*i);
        } else if (auto* d = std::get_if<double>(&v_)) {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", *d);
            out += buf;
        } else if (auto* s = std::get_if<std::string>(&v_)) {
            write_escaped(out, *s);
        } else if (auto* a = std::get_if<Array>(&v_)) {
            out.push_back('[');
            for (std::size_t i = 0; i < a->size(); ++i) {
                if (i) out.push_back(',');
                pad(depth + 1);
                (*a)[i].write(out, indent, depth + 1);
            }
            if (!a->empty()) pad(depth);
            out.push_back(']');
        } else if (auto* o = std::get_if<Object>(&v_)) {
            Object sorted = *o;
            std::stable_sort(sorted.begin(), sorted.end(),
                             [](const auto& x, const auto& y) { return x.first < y.first; });
            out.push_back('{');
            for (std::size_t i = 0; i < sorted.size(); ++i) {
                if (i) out.push_back(',');
                pad(depth + 1);
                write_escaped(out, sorted[i].first);
                out.push_back(':');
                if (indent > 0) out.push_back(' ');
                sorted[i].second.write(out, indent, depth + 1);
            }
            if (!sorted.empty()) pad(depth);
            out.push_back('}');
        }
    }
};

}  // namespace levyig
