from .types import (
    Type, IntType, BoolType, UnitType, BitsType, EnumType, TupleType, RecordType, UnionType,
    Ctor, INT, BOOL, UNIT, BITS32, named_type, record_type, record_type_of, ctor_info, domain,
    default_value, check_value, record_fields
)
from .program import (
    FOREIGN, FunctionDecl, Program, lookup_function, fresh_name, check_wellformed,
    require_wellformed
)
from .prims import primitive, evaluate_prim, MASK32
