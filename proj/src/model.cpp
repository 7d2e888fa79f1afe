#include "salcheck/model.hpp"

#include <algorithm>

namespace salcheck {

std::string_view op_name(OpKind kind) {
  switch (kind) {
    case OpKind::Inc: return "inc";
    case OpKind::Dec: return "dec";
    case OpKind::Add: return "add";
    case OpKind::Rem: return "rem";
    case OpKind::Enable: return "enable";
    case OpKind::Disable: return "disable";
    case OpKind::Write: return "write";
    case OpKind::Insert: return "insert";
    case OpKind::Delete: return "delete";
    case OpKind::MapSet: return "mapset";
  }
  return "?";
}

OpKind parse_op_kind(std::string_view name) {
  for (OpKind k : kAllOpKinds) {
    if (op_name(k) == name) return k;
  }
  throw std::invalid_argument("unknown operation '" + std::string(name) + "'");
}

std::vector<std::int64_t> op_args(const OpPayload& op) {
  switch (arity(op.kind)) {
    case 0: return {};
    case 1: return {op.arg};
    default: return {op.key, op.arg};
  }
}

OpPayload make_op(OpKind kind, const std::vector<std::int64_t>& args) {
  if (args.size() != static_cast<std::size_t>(arity(kind))) {
    throw std::invalid_argument(std::string(op_name(kind)) + " expects " +
                                std::to_string(arity(kind)) + " argument(s)");
  }
  OpPayload op{kind};
  if (args.size() == 1) op.arg = args[0];
  if (args.size() == 2) {
    op.key = args[0];
    op.arg = args[1];
  }
  return op;
}

std::string to_string(const OpPayload& op) {
  std::string out(op_name(op.kind));
  switch (arity(op.kind)) {
    case 0: break;
    case 1: out += "(" + std::to_string(op.arg) + ")"; break;
    default:
      out += "(" + std::to_string(op.key) + ", add(" + std::to_string(op.arg) + "))";
      break;
  }
  return out;
}

namespace {

void replace_all(std::string& s, std::string_view from, const std::string& to) {
  for (std::size_t pos = s.find(from); pos != std::string::npos;
       pos = s.find(from, pos + to.size())) {
    s.replace(pos, from.size(), to);
  }
}

}  // namespace

std::string format_event(const Event& e, std::string_view format) {
  std::string args;
  switch (arity(e.op.kind)) {
    case 0: break;
    case 1: args = std::to_string(e.op.arg) + ","; break;
    default: args = std::to_string(e.op.key) + ",add(" + std::to_string(e.op.arg) + "),"; break;
  }
  std::string out(format);
  replace_all(out, "{op}", std::string(op_name(e.op.kind)));
  replace_all(out, "{args}", args);
  replace_all(out, "{t}", std::to_string(e.ts.value));
  replace_all(out, "{r}", std::to_string(e.rid.value));
  return out;
}

bool PayloadDomain::accepts(OpKind kind) const {
  return std::find(kinds_.begin(), kinds_.end(), kind) != kinds_.end();
}

bool conflicting(const RcRelation& rc, const OpPayload& o1, const OpPayload& o2) {
  return rc(o1, o2) || rc(o2, o1);
}

RcOrder rc_order(const RcRelation& rc, const OpPayload& o1, const OpPayload& o2) {
  if (rc(o1, o2)) return RcOrder::First;
  if (rc(o2, o1)) return RcOrder::Second;
  return RcOrder::Unordered;
}

std::string_view to_string(RcOrder order) {
  switch (order) {
    case RcOrder::First: return "First";
    case RcOrder::Second: return "Second";
    case RcOrder::Unordered: return "Unordered";
  }
  return "?";
}

std::string_view to_string(RdtKind kind) { return kind == RdtKind::Mrdt ? "MRDT" : "CRDT"; }

void reject_payload(std::string_view rdt, const OpPayload& op) {
  throw SpecMismatch(std::string(rdt) + ": payload " + to_string(op) + " not in domain");
}

}  // namespace salcheck
