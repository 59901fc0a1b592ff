"""The hospital database used throughout the docs and tests."""

from __future__ import annotations

from .relational import ForeignKey, Record, Relation, RelationalDatabase, RelationalSchema
from .values import NULL, AttrType, Date, Int, Str

S, D, I = AttrType.STRING, AttrType.DATE, AttrType.INTEGER

DATE_FILTER_SQL = (
    "SELECT p.Name FROM Patients p, Admissions a "
    "WHERE a.Pat_No = p.PatientNo AND a.Admi_date = '30/11/2021'"
)

# The joined admission/doctor/patient query used to illustrate translation.
ADMISSIONS_REPORT_SQL = (
    "SELECT a.AdmiNo, a.Admi_date, b.Name, b.Speciality, p.Name "
    "FROM Admissions a, Doctors b, Patients p "
    "WHERE a.Doc_No = b.DoctorNo AND a.Pat_No = p.PatientNo"
)


def hosp_schema() -> RelationalSchema:
    return RelationalSchema((
        Relation(
            "Admissions",
            {"AdmiNo": I, "Admi_date": D, "Doc_No": I, "Pat_No": I},
            ("AdmiNo",),
            (
                ForeignKey("Admissions", ("Doc_No",), "Doctors", ("DoctorNo",)),
                ForeignKey("Admissions", ("Pat_No",), "Patients", ("PatientNo",)),
            ),
        ),
        Relation("Doctors", {"DoctorNo": I, "Name": S, "Speciality": S}, ("DoctorNo",)),
        Relation("Patients", {"PatientNo": I, "Name": S}, ("PatientNo",)),
        Relation(
            "Diagnostics",
            {"DiagNo": I, "Admi_No": I},
            ("DiagNo",),
            (ForeignKey("Diagnostics", ("Admi_No",), "Admissions", ("AdmiNo",)),),
        ),
    ))


def _rows(tid0: int, names: list[str], data: list[tuple]) -> tuple[Record, ...]:
    return tuple(Record(tid0 + k, dict(zip(names, row))) for k, row in enumerate(data))


def hosp() -> RelationalDatabase:
    """Consistent HOSP instance. tids deliberately differ from key values."""
    schema = hosp_schema()
    return RelationalDatabase.build(schema, {
        "Admissions": _rows(101, ["AdmiNo", "Admi_date", "Doc_No", "Pat_No"], [
            (Int(1), Date("2021-11-30"), Int(1), Int(1)),
            (Int(2), Date("2021-11-30"), Int(2), Int(3)),
            (Int(3), Date("2021-12-02"), Int(1), Int(2)),
            (Int(4), Date("2021-12-05"), NULL, Int(4)),
        ]),
        "Doctors": _rows(201, ["DoctorNo", "Name", "Speciality"], [
            (Int(1), Str("Amel Benali"), Str("Cardiology")),
            (Int(2), Str("Karim Haddad"), Str("Neurology")),
            (Int(3), Str("Sara Mansouri"), Str("Pediatrics")),
        ]),
        "Patients": _rows(301, ["PatientNo", "Name"], [
            (Int(1), Str("Yacine Brahimi")),
            (Int(2), Str("Lina Cherif")),
            (Int(3), Str("Omar Kaci")),
            (Int(4), Str("Nour Saidi")),
        ]),
        "Diagnostics": _rows(401, ["DiagNo", "Admi_No"], [
            (Int(1), Int(1)),
            (Int(2), Int(1)),
            (Int(3), Int(3)),
        ]),
    })
