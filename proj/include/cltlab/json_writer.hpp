#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

namespace cltlab {

// Deterministic JSON emitter: caller-fixed key order, 2-space indentation,
// doubles rendered with 17 significant digits so values round-trip exactly.
class json_writer {
 public:
  const std::string& str() const { return out_; }

  void open_object() {
    begin_value();
    out_ += '{';
    stack_.push_back(true);
    fresh_ = true;
  }
  void close_object() {
    stack_.pop_back();
    if (!fresh_) newline();
    out_ += '}';
    fresh_ = false;
  }
  void open_array() {
    begin_value();
    out_ += '[';
    stack_.push_back(true);
    fresh_ = true;
  }
  void close_array() {
    stack_.pop_back();
    if (!fresh_) newline();
    out_ += ']';
    fresh_ = false;
  }

  void key(std::string_view k) {
    if (!fresh_) out_ += ',';
    fresh_ = false;
    newline();
    append_string(k);
    out_ += ": ";
    pending_value_ = true;
  }

  void value(double v) {
    begin_value();
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    out_ += buf;
  }
  void value(std::int64_t v) {
    begin_value();
    out_ += std::to_string(v);
  }
  void value(std::uint64_t v) {
    begin_value();
    out_ += std::to_string(v);
  }
  void value(int v) { value(static_cast<std::int64_t>(v)); }
  void value(bool v) {
    begin_value();
    out_ += v ? "true" : "false";
  }
  void value(std::string_view v) {
    begin_value();
    append_string(v);
  }
  void value(const char* v) { value(std::string_view(v)); }
  void null() {
    begin_value();
    out_ += "null";
  }

  template <typename T>
  void field(std::string_view k, const T& v) {
    key(k);
    value(v);
  }

 private:
  void begin_value() {
    if (pending_value_) {
      pending_value_ = false;
      return;
    }
    if (!stack_.empty()) {
      if (!fresh_) out_ += ',';
      fresh_ = false;
      newline();
    }
  }

  void newline() {
    out_ += '\n';
    out_.append(stack_.size() * 2, ' ');
  }

  void append_string(std::string_view s) {
    out_ += '"';
    for (char c : s) {
      switch (c) {
        case '"': out_ += "\\\""; break;
        case '\\': out_ += "\\\\"; break;
        case '\n': out_ += "\\n"; break;
        case '\t': out_ += "\\t"; break;
        case '\r': out_ += "\\r"; break;
        default:
          if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof buf, "\\u%04x", c);
            out_ += buf;
          } else {
            out_ += c;
          }
      }
    }
    out_ += '"';
  }

  std::string out_;
  std::vector<bool> stack_;
  bool fresh_ = true;
  bool pending_value_ = false;
};

}  // namespace cltlab
