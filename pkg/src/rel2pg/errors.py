class Rel2PGError(Exception):
    """Base class for all toolkit errors."""


class SchemaError(Rel2PGError):
    """A relational schema or schema graph is malformed."""


class SchemaReferenceError(SchemaError):
    """A relation, attribute, or label name does not resolve."""


class InstanceError(Rel2PGError):
    """A relational instance or instance graph is structurally invalid."""


class NotAMappedSchemaError(SchemaError):
    """A schema graph lacks the structure the schema mapping produces."""


class NotAMappedInstanceError(InstanceError):
    """An instance graph cannot be read back as a relational instance."""


class SqlSyntaxError(Rel2PGError):
    def __init__(self, message: str, line: int, column: int) -> None:
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class UnsupportedConstructError(Rel2PGError):
    """The query uses a construct outside SELECT-FROM-WHERE with AND conditions."""

    def __init__(self, construct: str, line: int = 0, column: int = 0) -> None:
        where = f" (line {line}, column {column})" if line else ""
        super().__init__(f"{construct} is outside the supported query class{where}")
        self.construct = construct


class QueryValidationError(Rel2PGError):
    """Name resolution or type checking of a query failed."""


class CypherSyntaxError(SqlSyntaxError):
    pass


class FormatError(Rel2PGError):
    """A serialized file violates its declared format. ``path`` is a JSON path."""

    def __init__(self, message: str, path: str = "$") -> None:
        super().__init__(f"{path}: {message}")
        self.path = path


class CypherEncodingError(Rel2PGError):
    pass
