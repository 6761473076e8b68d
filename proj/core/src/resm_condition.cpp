#include "stopmove/error.hpp"
#include "stopmove/resm.hpp"

namespace stopmove {

namespace {

template <class T>
bool compare(const T& lhs, CmpOp op, const T& rhs) {
    switch (op) {
        case CmpOp::eq: return lhs == rhs;
        case CmpOp::ne: return lhs != rhs;
        case CmpOp::lt: return lhs < rhs;
        case CmpOp::le: return lhs <= rhs;
        case CmpOp::gt: return lhs > rhs;
        case CmpOp::ge: return lhs >= rhs;
    }
    return false;
}

}  // namespace

bool eval_cond(const Condition& c, const StopEvent& stop, const OlapContext& ctx) {
    switch (c.kind) {
        case Condition::Kind::all_of:
            for (const Condition& o : c.operands)
                if (!eval_cond(o, stop, ctx)) return false;
            return true;
        case Condition::Kind::any_of:
            for (const Condition& o : c.operands)
                if (eval_cond(o, stop, ctx)) return true;
            return false;
        case Condition::Kind::negation: return !eval_cond(c.operands.front(), stop, ctx);
        case Condition::Kind::compare: {
            const DimensionInstance& dim = ctx.dimension(stop.dimension);
            const Value& v = dim.attribute(dim.schema().bottom(), c.attribute, stop.extent);
            if (kind_of(v) != kind_of(c.literal))
                throw DomainError("attribute '" + c.attribute + "' is " + to_string(kind_of(v)) +
                                  " but the literal is " + to_string(kind_of(c.literal)));
            if (const auto* num = std::get_if<double>(&v))
                return compare(*num, c.op, std::get<double>(c.literal));
            if (c.op != CmpOp::eq && c.op != CmpOp::ne)
                throw DomainError("text attribute '" + c.attribute + "' only supports = and !=");
            return compare(std::get<std::string>(v), c.op, std::get<std::string>(c.literal));
        }
        case Condition::Kind::time_label:
            // Some t with start < t < end carries the label. Every reported
            // piece has positive length inside the closed stop interval, so it
            // meets the open interior.
            return !ctx.time().label_instant_set(c.category, c.label, stop.interval).empty();
    }
    return false;
}

}  // namespace stopmove
