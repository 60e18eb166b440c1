#include "julienne/adl.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <unordered_map>

namespace julienne::adl {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::syntax: return "syntax";
    case ErrorKind::unknown_directive: return "unknown-directive";
    case ErrorKind::duplicate_packet: return "duplicate-packet";
    case ErrorKind::duplicate_task: return "duplicate-task";
    case ErrorKind::undefined_packet: return "undefined-packet";
    case ErrorKind::duplicate_writer: return "duplicate-writer";
    case ErrorKind::read_before_write: return "read-before-write";
    case ErrorKind::bad_number: return "bad-number";
    case ErrorKind::bad_repeat_range: return "bad-repeat-range";
  }
  return "unknown";
}

std::string format_error(const ParseError& error) {
  return std::to_string(error.position.line) + ":" + std::to_string(error.position.column) + ": " +
         std::string(error_kind_name(error.kind)) + ": " + error.message;
}

namespace {

constexpr std::size_t kMaxExpandedStatements = 20'000'000;

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { word, lbrace, rbrace, newline, eof };

struct Token {
  Tok kind = Tok::eof;
  std::string_view text;
  SourcePosition pos;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  auto here = [&] { return SourcePosition{line, col}; };
  auto bump = [&](std::size_t n) {
    i += n;
    col += n;
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '\n') {
      out.push_back({Tok::newline, src.substr(i, 1), here()});
      ++i;
      ++line;
      col = 1;
    } else if (c == ' ' || c == '\t' || c == '\r') {
      bump(1);
    } else if (c == '#') {
      while (i < src.size() && src[i] != '\n') bump(1);
    } else if (c == '{') {
      out.push_back({Tok::lbrace, src.substr(i, 1), here()});
      bump(1);
    } else if (c == '}') {
      out.push_back({Tok::rbrace, src.substr(i, 1), here()});
      bump(1);
    } else {
      const SourcePosition start = here();
      const std::size_t begin = i;
      while (i < src.size()) {
        const char d = src[i];
        if (d == '$' && i + 1 < src.size() && src[i + 1] == '{') {
          // ${var} stays inside the word
          std::size_t close = src.find_first_of("}\n", i + 2);
          if (close == std::string_view::npos || src[close] == '\n') close = src.size() - 1;
          if (src[close] == '\n') --close;
          bump(close - i + 1);
          continue;
        }
        if (d == ' ' || d == '\t' || d == '\r' || d == '\n' || d == '#' || d == '{' || d == '}') break;
        bump(1);
      }
      out.push_back({Tok::word, src.substr(begin, i - begin), start});
    }
  }
  out.push_back({Tok::eof, {}, here()});
  return out;
}

// ---------------------------------------------------------------------------
// Syntax tree

struct Stmt {
  Token keyword;
  std::vector<Token> args;
  std::vector<Stmt> body;  // repeat only
};

class TreeParser {
 public:
  TreeParser(const std::vector<Token>& toks, std::vector<ParseError>& errors) : toks_(toks), errors_(errors) {}

  std::vector<Stmt> parse_file() {
    auto stmts = parse_block(false);
    return stmts;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }

  void error(SourcePosition p, ErrorKind k, std::string msg) { errors_.push_back({p, k, std::move(msg)}); }

  void skip_line() {
    while (peek().kind != Tok::newline && peek().kind != Tok::eof) ++pos_;
  }

  std::vector<Stmt> parse_block(bool nested) {
    std::vector<Stmt> out;
    while (true) {
      const Token& t = peek();
      switch (t.kind) {
        case Tok::eof:
          return out;
        case Tok::newline:
          ++pos_;
          continue;
        case Tok::rbrace:
          if (nested) return out;
          error(t.pos, ErrorKind::syntax, "unmatched '}'");
          ++pos_;
          continue;
        case Tok::lbrace:
          error(t.pos, ErrorKind::syntax, "unexpected '{'");
          ++pos_;
          continue;
        case Tok::word:
          break;
      }
      Stmt s;
      s.keyword = take();
      while (peek().kind == Tok::word) s.args.push_back(take());
      if (s.keyword.text == "repeat") {
        std::size_t save = pos_;
        while (peek().kind == Tok::newline) ++pos_;
        if (peek().kind != Tok::lbrace) {
          pos_ = save;
          error(s.keyword.pos, ErrorKind::syntax, "repeat requires a '{' block");
          skip_line();
          continue;
        }
        ++pos_;
        s.body = parse_block(true);
        if (peek().kind != Tok::rbrace) {
          error(s.keyword.pos, ErrorKind::syntax, "unterminated repeat block");
        } else {
          ++pos_;
        }
      } else if (peek().kind == Tok::lbrace) {
        error(peek().pos, ErrorKind::syntax, "unexpected '{' after " + std::string(s.keyword.text));
        ++pos_;
      }
      out.push_back(std::move(s));
    }
  }

  const std::vector<Token>& toks_;
  std::vector<ParseError>& errors_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Expansion

struct NameRef {
  std::string name;
  SourcePosition pos;
};

struct FlatPacket {
  std::string name;
  std::uint64_t size = 0;
  SourcePosition pos;
};

struct FlatTask {
  std::string name;
  Energy energy;
  std::vector<NameRef> reads;
  std::vector<NameRef> writes;
  SourcePosition pos;
};

bool is_ident_start(char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; }
bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

bool is_identifier(std::string_view s) {
  return !s.empty() && is_ident_start(s.front()) && std::all_of(s.begin() + 1, s.end(), is_ident_char);
}

struct Binding {
  std::string name;
  std::uint64_t value;
};

class Expander {
 public:
  explicit Expander(std::vector<ParseError>& errors) : errors_(errors) {}

  void run(const std::vector<Stmt>& stmts) { expand(stmts); }

  std::vector<FlatPacket> packets;
  std::vector<FlatTask> tasks;
  std::optional<Energy> startup;
  std::optional<std::pair<Energy, Energy>> nvm_read;
  std::optional<std::pair<Energy, Energy>> nvm_write;
  SourcePosition last_pos;

 private:
  std::set<std::tuple<std::size_t, std::size_t, int, std::string>> seen_;

  void error(SourcePosition p, ErrorKind k, std::string msg) {
    // Errors inside repeat bodies would otherwise be repeated once per iteration.
    if (!seen_.emplace(p.line, p.column, static_cast<int>(k), msg).second) return;
    errors_.push_back({p, k, std::move(msg)});
  }

  std::optional<std::string> substitute(std::string_view raw, SourcePosition pos) {
    if (raw.empty() || !is_ident_start(raw.front())) {
      error(pos, ErrorKind::syntax, "invalid name '" + std::string(raw) + "'");
      return std::nullopt;
    }
    std::string out;
    for (std::size_t i = 0; i < raw.size();) {
      const char c = raw[i];
      if (c != '$') {
        if (!is_ident_char(c)) {
          error(pos, ErrorKind::syntax, "invalid character in name '" + std::string(raw) + "'");
          return std::nullopt;
        }
        out += c;
        ++i;
        continue;
      }
      std::optional<std::uint64_t> value;
      std::string var;
      if (i + 1 < raw.size() && raw[i + 1] == '{') {
        const std::size_t close = raw.find('}', i + 2);
        if (close == std::string_view::npos) {
          error(pos, ErrorKind::syntax, "unterminated '${' in name '" + std::string(raw) + "'");
          return std::nullopt;
        }
        var = std::string(raw.substr(i + 2, close - i - 2));
        value = lookup(var);
        i = close + 1;
      } else {
        // Longest bound variable that prefixes the rest of the name.
        std::size_t end = i + 1;
        while (end < raw.size() && is_ident_char(raw[end])) ++end;
        var = std::string(raw.substr(i + 1, end - i - 1));
        for (std::size_t len = var.size(); len > 0 && !value; --len) {
          if (auto v = lookup(var.substr(0, len))) {
            value = v;
            i += 1 + len;
          }
        }
      }
      if (!value) {
        error(pos, ErrorKind::syntax, "undefined repeat variable '$" + var + "' in name '" + std::string(raw) + "'");
        return std::nullopt;
      }
      out += std::to_string(*value);
    }
    return out;
  }

  std::optional<std::uint64_t> lookup(std::string_view var) const {
    for (auto it = env_.rbegin(); it != env_.rend(); ++it)
      if (it->name == var) return it->value;
    return std::nullopt;
  }

  // key=value argument map; duplicates and unknown keys are syntax errors.
  std::optional<std::map<std::string_view, Token>> keyvals(const Stmt& s, std::size_t skip,
                                                           std::initializer_list<std::string_view> keys) {
    std::map<std::string_view, Token> kv;
    bool ok = true;
    for (std::size_t a = skip; a < s.args.size(); ++a) {
      const Token& t = s.args[a];
      const std::size_t eq = t.text.find('=');
      if (eq == std::string_view::npos) {
        error(t.pos, ErrorKind::syntax, "expected key=value, got '" + std::string(t.text) + "'");
        ok = false;
        continue;
      }
      const std::string_view key = t.text.substr(0, eq);
      if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
        error(t.pos, ErrorKind::syntax, "unknown key '" + std::string(key) + "' for " + std::string(s.keyword.text));
        ok = false;
        continue;
      }
      Token value = t;
      value.text = t.text.substr(eq + 1);
      value.pos.column += eq + 1;
      if (!kv.emplace(key, value).second) {
        error(t.pos, ErrorKind::syntax, "duplicate key '" + std::string(key) + "'");
        ok = false;
      }
    }
    for (auto key : keys) {
      if (!kv.contains(key)) {
        error(s.keyword.pos, ErrorKind::syntax,
              std::string(s.keyword.text) + " requires " + std::string(key) + "=<value>");
        ok = false;
      }
    }
    if (!ok) return std::nullopt;
    return kv;
  }

  std::optional<Energy> number(const Token& t, bool nano) {
    if (t.text.find('$') != std::string_view::npos) {
      error(t.pos, ErrorKind::syntax, "substitution is not supported in numbers: '" + std::string(t.text) + "'");
      return std::nullopt;
    }
    auto e = nano ? parse_nanojoules(t.text) : parse_microjoules(t.text);
    if (!e || *e < Energy::zero()) {
      error(t.pos, ErrorKind::bad_number, "expected a non-negative decimal, got '" + std::string(t.text) + "'");
      return std::nullopt;
    }
    return e;
  }

  bool budget() {
    if (++produced_ <= kMaxExpandedStatements) return true;
    if (!overflowed_) error(last_pos, ErrorKind::syntax, "repeat expansion exceeds the statement limit");
    overflowed_ = true;
    return false;
  }

  void expand(const std::vector<Stmt>& stmts) {
    for (const Stmt& s : stmts) {
      if (overflowed_) return;
      last_pos = s.keyword.pos;
      const std::string_view kw = s.keyword.text;
      if (kw == "packet") {
        do_packet(s);
      } else if (kw == "task") {
        do_task(s);
      } else if (kw == "repeat") {
        do_repeat(s);
      } else if (kw == "energy") {
        do_energy(s);
      } else if (kw == "nvm") {
        do_nvm(s);
      } else {
        error(s.keyword.pos, ErrorKind::unknown_directive, "unknown directive '" + std::string(kw) + "'");
      }
    }
  }

  void do_packet(const Stmt& s) {
    if (s.args.size() != 2) {
      error(s.keyword.pos, ErrorKind::syntax, "expected 'packet <name> <size_bytes>'");
      return;
    }
    auto name = substitute(s.args[0].text, s.args[0].pos);
    const Token& size_tok = s.args[1];
    std::optional<std::uint64_t> size;
    if (size_tok.text.find('$') != std::string_view::npos) {
      error(size_tok.pos, ErrorKind::syntax, "substitution is not supported in sizes: '" + std::string(size_tok.text) + "'");
    } else if (size_tok.text.empty() || size_tok.text.size() > 18 ||
               !std::all_of(size_tok.text.begin(), size_tok.text.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      error(size_tok.pos, ErrorKind::bad_number, "packet size must be a decimal integer, got '" + std::string(size_tok.text) + "'");
    } else {
      size = std::stoull(std::string(size_tok.text));
    }
    if (name && size && budget()) packets.push_back({*name, *size, s.keyword.pos});
  }

  std::optional<std::vector<NameRef>> name_list(const Token& t) {
    std::vector<NameRef> out;
    if (t.text == "-") return out;
    if (t.text.empty()) {
      error(t.pos, ErrorKind::syntax, "empty packet list (use '-')");
      return std::nullopt;
    }
    bool ok = true;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = t.text.find(',', start);
      const std::string_view item = t.text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      SourcePosition p = t.pos;
      p.column += start;
      if (item.empty()) {
        error(p, ErrorKind::syntax, "empty entry in packet list");
        ok = false;
      } else if (auto name = substitute(item, p)) {
        out.push_back({*name, p});
      } else {
        ok = false;
      }
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (!ok) return std::nullopt;
    return out;
  }

  void do_task(const Stmt& s) {
    if (s.args.empty()) {
      error(s.keyword.pos, ErrorKind::syntax, "expected 'task <name> energy_uJ=<f> reads=<list> writes=<list>'");
      return;
    }
    auto name = substitute(s.args[0].text, s.args[0].pos);
    auto kv = keyvals(s, 1, {"energy_uJ", "reads", "writes"});
    if (!kv) return;
    auto energy = number(kv->at("energy_uJ"), false);
    auto reads = name_list(kv->at("reads"));
    auto writes = name_list(kv->at("writes"));
    if (name && energy && reads && writes && budget())
      tasks.push_back({*name, *energy, std::move(*reads), std::move(*writes), s.keyword.pos});
  }

  void do_energy(const Stmt& s) {
    auto kv = keyvals(s, 0, {"startup_uJ"});
    if (!kv) return;
    auto e = number(kv->at("startup_uJ"), false);
    if (!e) return;
    if (startup) {
      error(s.keyword.pos, ErrorKind::syntax, "duplicate energy directive");
      return;
    }
    startup = e;
  }

  void do_nvm(const Stmt& s) {
    if (s.args.empty() || (s.args[0].text != "read" && s.args[0].text != "write")) {
      error(s.keyword.pos, ErrorKind::syntax, "expected 'nvm read|write base_uJ=<f> per_byte_nJ=<f>'");
      return;
    }
    auto kv = keyvals(s, 1, {"base_uJ", "per_byte_nJ"});
    if (!kv) return;
    auto base = number(kv->at("base_uJ"), false);
    auto per_byte = number(kv->at("per_byte_nJ"), true);
    if (!base || !per_byte) return;
    auto& slot = s.args[0].text == "read" ? nvm_read : nvm_write;
    if (slot) {
      error(s.keyword.pos, ErrorKind::syntax, "duplicate nvm " + std::string(s.args[0].text) + " directive");
      return;
    }
    slot = std::make_pair(*base, *per_byte);
  }

  void do_repeat(const Stmt& s) {
    if (s.args.size() != 2 || !is_identifier(s.args[0].text)) {
      error(s.keyword.pos, ErrorKind::syntax, "expected 'repeat <var> <lo>..<hi> {'");
      return;
    }
    const Token& range = s.args[1];
    const std::size_t dots = range.text.find("..");
    auto parse_bound = [](std::string_view b) -> std::optional<std::uint64_t> {
      if (b.empty() || b.size() > 18 || !std::all_of(b.begin(), b.end(), [](char c) { return c >= '0' && c <= '9'; }))
        return std::nullopt;
      return std::stoull(std::string(b));
    };
    std::optional<std::uint64_t> lo, hi;
    if (dots != std::string_view::npos) {
      lo = parse_bound(range.text.substr(0, dots));
      hi = parse_bound(range.text.substr(dots + 2));
    }
    if (!lo || !hi) {
      error(range.pos, ErrorKind::bad_repeat_range, "expected <lo>..<hi> with non-negative integers, got '" +
                                                         std::string(range.text) + "'");
      return;
    }
    if (*hi < *lo) {
      error(range.pos, ErrorKind::bad_repeat_range, "empty-reversed range " + std::string(range.text) + " (hi < lo)");
      return;
    }
    for (std::uint64_t v = *lo; v < *hi && !overflowed_; ++v) {
      env_.push_back({std::string(s.args[0].text), v});
      expand(s.body);
      env_.pop_back();
    }
  }

  std::vector<ParseError>& errors_;
  std::vector<Binding> env_;
  std::size_t produced_ = 0;
  bool overflowed_ = false;
};

}  // namespace

ParseResult parse(std::string_view text) {
  ParseResult result;
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  const std::vector<Token> toks = lex(text);
  TreeParser tree(toks, result.errors);
  const std::vector<Stmt> stmts = tree.parse_file();
  Expander ex(result.errors);
  ex.run(stmts);

  EnergyModel model;
  if (ex.startup) {
    model.startup = *ex.startup;
  } else {
    result.warnings.push_back({{1, 1}, "no 'energy' directive; start-up energy defaults to 0"});
  }
  if (ex.nvm_read) {
    model.read_base = ex.nvm_read->first;
    model.read_per_byte = ex.nvm_read->second;
  } else {
    result.warnings.push_back({{1, 1}, "no 'nvm read' directive; read costs default to 0"});
  }
  if (ex.nvm_write) {
    model.write_base = ex.nvm_write->first;
    model.write_per_byte = ex.nvm_write->second;
  } else {
    result.warnings.push_back({{1, 1}, "no 'nvm write' directive; write costs default to 0"});
  }

  std::vector<Packet> packets;
  std::unordered_map<std::string, PacketId> packet_ids;
  for (const FlatPacket& fp : ex.packets) {
    if (packet_ids.contains(fp.name)) {
      result.errors.push_back({fp.pos, ErrorKind::duplicate_packet, "packet '" + fp.name + "' declared twice"});
      continue;
    }
    packet_ids.emplace(fp.name, static_cast<PacketId>(packets.size()));
    packets.push_back({static_cast<PacketId>(packets.size()), fp.name, fp.size, 0});
  }

  std::vector<Task> tasks;
  std::unordered_map<std::string, TaskIndex> task_names;
  std::vector<TaskIndex> writer(packets.size(), 0);
  for (const FlatTask& ft : ex.tasks) {
    const auto idx = static_cast<TaskIndex>(tasks.size() + 1);
    if (!task_names.emplace(ft.name, idx).second)
      result.errors.push_back({ft.pos, ErrorKind::duplicate_task, "task '" + ft.name + "' declared twice"});
    Task t;
    t.index = idx;
    t.name = ft.name;
    t.energy = ft.energy;
    auto resolve = [&](const std::vector<NameRef>& refs, std::vector<PacketId>& out) {
      for (const NameRef& r : refs) {
        auto it = packet_ids.find(r.name);
        if (it == packet_ids.end()) {
          result.errors.push_back({r.pos, ErrorKind::undefined_packet,
                                   "task '" + ft.name + "' uses undeclared packet '" + r.name + "'"});
          continue;
        }
        if (std::find(out.begin(), out.end(), it->second) == out.end()) out.push_back(it->second);
      }
    };
    resolve(ft.reads, t.reads);
    resolve(ft.writes, t.writes);
    for (PacketId p : t.writes) {
      if (writer[p] != 0) {
        result.errors.push_back({ft.pos, ErrorKind::duplicate_writer,
                                 "duplicate writer: packet '" + packets[p].name + "' written by tasks '" +
                                     tasks[writer[p] - 1].name + "' and '" + ft.name + "'"});
      } else {
        writer[p] = idx;
      }
    }
    tasks.push_back(std::move(t));
  }
  for (std::size_t k = 0; k < tasks.size(); ++k) {
    const auto idx = static_cast<TaskIndex>(k + 1);
    for (PacketId p : tasks[k].reads) {
      if (writer[p] != 0 && writer[p] < idx) continue;
      std::string why = writer[p] == 0     ? "is never written"
                        : writer[p] == idx ? "is read and written by the same task"
                                           : "is written later, by task '" + tasks[writer[p] - 1].name + "'";
      result.errors.push_back({ex.tasks[k].pos, ErrorKind::read_before_write,
                               "read-before-write: packet '" + packets[p].name + "' read at task '" +
                                   tasks[k].name + "' " + why});
    }
  }
  if (tasks.empty() && result.errors.empty()) result.errors.push_back({{1, 1}, ErrorKind::syntax, "no tasks"});

  std::stable_sort(result.errors.begin(), result.errors.end(), [](const ParseError& a, const ParseError& b) {
    return std::tie(a.position.line, a.position.column) < std::tie(b.position.line, b.position.column);
  });
  if (!result.errors.empty()) return result;

  Application app(model, std::move(packets), std::move(tasks));
  for (const Diagnostic& d : validate(app))
    result.errors.push_back({{1, 1}, ErrorKind::syntax, "internal validation failure: " + d.message});
  if (result.errors.empty()) result.application = std::move(app);
  return result;
}

namespace {

std::string format_nanojoules(Energy e) {
  // fJ -> nJ is a 10^6 scale; render through the uJ formatter at 10^3 x.
  return format_microjoules(Energy::from_femtojoules(e.femtojoules() * 1000));
}

std::string join_names(const Application& app, const std::vector<PacketId>& ids) {
  if (ids.empty()) return "-";
  std::string out;
  for (std::size_t a = 0; a < ids.size(); ++a) {
    if (a) out += ',';
    out += app.packet(ids[a]).name;
  }
  return out;
}

}  // namespace

std::string serialize(const Application& app) {
  const EnergyModel& m = app.model();
  std::string out;
  out += "energy startup_uJ=" + format_microjoules(m.startup) + "\n";
  out += "nvm read base_uJ=" + format_microjoules(m.read_base) + " per_byte_nJ=" + format_nanojoules(m.read_per_byte) + "\n";
  out += "nvm write base_uJ=" + format_microjoules(m.write_base) + " per_byte_nJ=" + format_nanojoules(m.write_per_byte) + "\n";
  for (const Packet& p : app.packets()) out += "packet " + p.name + " " + std::to_string(p.size) + "\n";
  for (const Task& t : app.tasks()) {
    out += "task " + t.name + " energy_uJ=" + format_microjoules(t.energy) + " reads=" + join_names(app, t.reads) +
           " writes=" + join_names(app, t.writes) + "\n";
  }
  return out;
}

}  // namespace julienne::adl
