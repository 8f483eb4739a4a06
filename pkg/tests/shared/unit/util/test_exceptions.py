from hwtune.shared.util import (
    BadCodingError,
    BudgetError,
    DocumentNotFound,
    HwtuneException,
    InvalidFormat,
    SchemaError,
)


def test_invalid_format():
    e = InvalidFormat("msg")
    assert e.msg == "msg"
    assert isinstance(e, HwtuneException)


def test_schema_error_is_invalid_format():
    assert isinstance(SchemaError("msg"), InvalidFormat)


def test_document_not_found():
    e = DocumentNotFound("hardware profile", "h100")
    assert e.kind == "hardware profile"
    assert e.name == "h100"
    assert "h100" in e.msg


def test_budget_error():
    e = BudgetError(0)
    assert e.budget == 0
    assert ">= 1" in e.msg


def test_bad_coding_error_is_not_domain_error():
    assert not isinstance(BadCodingError(), HwtuneException)
    assert isinstance(BadCodingError(), RuntimeError)
