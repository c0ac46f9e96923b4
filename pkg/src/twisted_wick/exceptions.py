"""Custom twisted-wick exceptions.

라이브러리 전체에서 사용하는 예외 계층 정의.
모든 예외는 WickError를 상속하며, 진단용 속성을 함께 보관한다.
"""


class WickError(Exception):
    """Base exception for the library.

    모든 twisted-wick 예외의 베이스 클래스.
    """

    pass


class ScalarDivisionError(WickError, ZeroDivisionError):
    """Inversion or division by the zero scalar."""

    pass


class EvaluationPoleError(WickError):
    """Specialisation hits a pole of a rational function.

    Attributes:
        point: q 값 (pole 위치)
    """

    def __init__(self, message: str, point: object = None):
        self.point = point
        super().__init__(message)


class SlotError(WickError):
    """Two-slot operator applied at an incompatible position.

    Attributes:
        position: 1-based slot position
        expected: 기대한 variance
        found: 실제 variance
    """

    def __init__(
        self,
        message: str,
        position: int | None = None,
        expected: object = None,
        found: object = None,
    ):
        self.position = position
        self.expected = expected
        self.found = found
        super().__init__(message)


class SignatureMismatchError(WickError):
    """Tensors with different signatures combined linearly."""

    def __init__(self, message: str, left: object = None, right: object = None):
        self.left = left
        self.right = right
        super().__init__(message)


class ResourceLimitError(WickError):
    """Configured word-length or dimension cap exceeded.

    Attributes:
        resource: 제한 종류 ('word_length', 'dimension')
        limit: 설정된 한도
        requested: 요청된 크기
    """

    def __init__(
        self,
        message: str,
        resource: str = "dimension",
        limit: int = 0,
        requested: int = 0,
    ):
        self.resource = resource
        self.limit = limit
        self.requested = requested
        super().__init__(message)


class TwistDefinitionError(WickError):
    """Invalid twist-system data.

    Attributes:
        tensor: 문제가 된 텐서 이름 ('B', 'Btilde', 'C')
    """

    def __init__(self, message: str, tensor: str | None = None):
        self.tensor = tensor
        super().__init__(message)


class IndexOutOfRangeError(TwistDefinitionError):
    """Entry index outside 1..d."""

    def __init__(
        self,
        message: str,
        tensor: str | None = None,
        entry: tuple[int, ...] | None = None,
    ):
        self.entry = entry
        super().__init__(message, tensor)


class DuplicateEntryError(TwistDefinitionError):
    """Same (i, j, k, l) given twice for one tensor."""

    def __init__(
        self,
        message: str,
        tensor: str | None = None,
        entry: tuple[int, ...] | None = None,
    ):
        self.entry = entry
        super().__init__(message, tensor)


class UnknownPresetError(WickError):
    """Preset name not registered."""

    def __init__(self, message: str, name: str | None = None):
        self.name = name
        super().__init__(message)


class NotWellDefinedError(WickError):
    """Quotient operator used after its well-definedness check failed."""

    def __init__(self, message: str, operator: str | None = None):
        self.operator = operator
        super().__init__(message)


class ParseError(WickError):
    """Positioned parse failure.

    Attributes:
        text: 입력 문자열
        position: 0-based offset
        line: 1-based line
        column: 1-based column
    """

    def __init__(
        self,
        message: str,
        text: str = "",
        position: int = 0,
        line: int = 1,
        column: int = 1,
    ):
        self.text = text
        self.position = position
        self.line = line
        self.column = column
        super().__init__(message)


class CoefficientSyntaxError(ParseError):
    """Malformed coefficient expression."""

    pass


class WordSyntaxError(ParseError):
    """Malformed operator word."""

    pass


class SpecFileError(ParseError):
    """Malformed or semantically invalid spec file.

    Attributes:
        entry: 문제 엔트리 식별자 (예: 'C[3]')
    """

    def __init__(
        self,
        message: str,
        text: str = "",
        position: int = 0,
        line: int = 1,
        column: int = 1,
        entry: str | None = None,
    ):
        self.entry = entry
        super().__init__(message, text, position, line, column)


class ConfigError(WickError):
    """Invalid configuration value (usually from the environment)."""

    pass


class RewriteTerminationError(WickError):
    """Normal-ordering measure failed to decrease."""

    pass
